// Copyright 2026 The nstkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nst/synthetic.hpp"

#include <gtest/gtest.h>

#include "nst/error.hpp"
#include "nst/pipeline.hpp"
#include "nst/ssim.hpp"

namespace nst {
namespace {

TEST(SyntheticWeights, DeterministicForSeed) {
  SyntheticWeightsOptions a;
  SyntheticWeightsOptions b;
  b.seed = 99;
  EXPECT_EQ(make_synthetic_weights(a), make_synthetic_weights(a));
  EXPECT_NE(make_synthetic_weights(a), make_synthetic_weights(b));
}

TEST(SyntheticWeights, SatisfiesEveryMethodManifest) {
  const WeightStore w = make_synthetic_weights();
  EXPECT_EQ(Architecture::infer(w), compact_architecture());
  for (Method m : kAllMethods) {
    const auto levels = default_levels(m);
    EXPECT_NO_THROW(validate(w, method_manifest(compact_architecture(), m, levels)));
  }
}

TEST(SyntheticWeights, RejectsNarrowWidths) {
  SyntheticWeightsOptions o;
  o.arch = Architecture{{8, 16, 32, 64, 64}};
  EXPECT_THROW(make_synthetic_weights(o), ArgumentError);
}

TEST(SyntheticImages, InRangeAndDeterministic) {
  const Image c = make_content_image(50, 30, 4);
  const Image s = make_style_image(50, 30, 4);
  EXPECT_EQ(c.width(), 50);
  EXPECT_EQ(c.height(), 30);
  for (float v : c.data()) {
    ASSERT_GE(v, 0.0f);
    ASSERT_LE(v, 1.0f);
  }
  for (float v : s.data()) {
    ASSERT_GE(v, 0.0f);
    ASSERT_LE(v, 1.0f);
  }
  EXPECT_EQ(c, make_content_image(50, 30, 4));
  EXPECT_NE(c, make_content_image(50, 30, 5));
  EXPECT_LT(ssim(c, s), 0.5);
  EXPECT_THROW(make_content_image(0, 4, 1), ArgumentError);
}

}  // namespace
}  // namespace nst
