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

#include "nst/tensor.hpp"
#include "nst/vgg.hpp"
#include "nst/weights.hpp"

namespace nst {

/// Narrow VGG-19 stack (3/16 of the standard widths) used with synthetic weights.
Architecture compact_architecture();

struct SyntheticWeightsOptions {
  Architecture arch = compact_architecture();
  std::uint64_t seed = 0x5eed;
  /// Scale of the random texture filters relative to He initialization.
  double texture_gain = 1.0;
};

/// Hand-constructed weights covering the encoder through relu5_1 and all
/// three decoder families at every level.
///
/// Channels 0..5 of every encoder layer carry each RGB value as the pair
/// (v + 0.5, 1.5 - v); 2x2 max pooling then keeps the local maximum and
/// minimum of every color. Channel 6 is constant one. Remaining channels are
/// random ReLU filters of everything below them, so feature statistics depend
/// on image texture. The decoders read only channels 0..6 and output the
/// midrange (max + min) / 2. Nearest-upsampling decoders smooth after every
/// upsampling step. Unpooling decoders use the constant channel, which pools
/// to the top-left corner of every window, to rebuild the full block with two
/// convolutions before smoothing. Encoding then decoding is a blurred
/// reconstruction of the input, standing in for pretrained decoders.
WeightStore make_synthetic_weights(const SyntheticWeightsOptions& opts = {});

/// Photo-like test image: graded sky, soft-edged colored shapes, low-frequency
/// shading and grain at three scales.
Image make_content_image(int width, int height, std::uint64_t seed);

/// Comic-like test image: flat palette regions with dark outlines, halftone
/// dots and hatching.
Image make_style_image(int width, int height, std::uint64_t seed);

}  // namespace nst
