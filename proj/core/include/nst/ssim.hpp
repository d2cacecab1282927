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

#include <span>
#include <vector>

#include "nst/tensor.hpp"

namespace nst {

/// Canonical SSIM configuration: 11x11 Gaussian window with sigma 1.5,
/// K1 = 0.01, K2 = 0.03, dynamic range 1.
struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;

  void validate() const;
  /// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
  std::vector<double> taps() const;
};

/// ITU-R BT.601 luma, row-major H x W.
std::vector<double> luma(const Image& img);

/// Mean SSIM over all window positions lying fully inside the luma planes.
/// Throws ShapeError on size mismatch and ArgumentError if the image is
/// smaller than the window.
double ssim(const Image& a, const Image& b, const SsimParams& params = {});

/// Same on precomputed single-channel planes.
double ssim_plane(std::span<const double> a, std::span<const double> b, int height, int width,
                  const SsimParams& params = {});

}  // namespace nst
