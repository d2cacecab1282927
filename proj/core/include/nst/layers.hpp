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

#include <cstdint>
#include <vector>

#include "nst/tensor.hpp"
#include "nst/weights.hpp"

namespace nst {

/// Argmax switches recorded by one 2x2 max-pool layer.
struct PoolArgmax {
  int channels = 0;
  /// Spatial size of the pooled layer's input.
  int in_height = 0;
  int in_width = 0;
  /// One entry per pooled output element, C x (H/2) x (W/2) order. The value
  /// is dy * 2 + dx inside the 2x2 window.
  std::vector<std::uint8_t> offsets;

  friend bool operator==(const PoolArgmax&, const PoolArgmax&) = default;
};

/// Switches of every pooling layer an encoder passed through, in encoder order.
struct PoolIndices {
  std::vector<PoolArgmax> layers;

  friend bool operator==(const PoolIndices&, const PoolIndices&) = default;
};

struct PoolResult {
  FeatureMap output;
  PoolArgmax argmax;
};

/// Stride-1 cross-correlation with reflection padding of width kH / 2.
/// `kernel` has shape (out, in, k, k) with k in {1, 3}; `bias` has shape (out).
FeatureMap conv2d(const FeatureMap& input, const Tensor& kernel, const Tensor& bias);

FeatureMap relu(FeatureMap input);
void relu_inplace(FeatureMap& f);

/// 2x2 stride-2 max pooling. Ties go to the first position in row-major scan
/// order. Odd spatial dimensions throw ShapeError.
PoolResult maxpool2(const FeatureMap& input);

FeatureMap upsample_nearest2(const FeatureMap& input);

/// Scatters each value to the argmax position recorded by the matching pool
/// layer; the other three window positions are zero.
FeatureMap unpool(const FeatureMap& input, const PoolArgmax& argmax);

/// Reflection index for padding; a dimension of size 1 replicates its only element.
inline int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  if (i < 0) return -i;
  if (i >= n) return 2 * n - 2 - i;
  return i;
}

}  // namespace nst
