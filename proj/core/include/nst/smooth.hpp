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

#pragma once

#include "nst/tensor.hpp"

namespace nst {

struct GuidedFilterParams {
  /// Window is (2 * radius + 1)^2, truncated at the image border.
  int radius = 7;
  double epsilon = 1e-4;
};

/// Edge-aware local smoothing of `stylized` steered by the RGB `guide`
/// (color guided filter). Each output channel is locally an affine function
/// of the guide, so pixels with similar guide colors in a neighborhood end up
/// with similar values.
Image smooth(const Image& stylized, const Image& guide, const GuidedFilterParams& params = {});

}  // namespace nst
