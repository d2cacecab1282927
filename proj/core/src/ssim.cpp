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

#include "nst/ssim.hpp"

#include <cmath>
#include <string>

#include "nst/error.hpp"

namespace nst {
namespace {

// Valid-mode separable filtering: output is (h - n + 1) x (w - n + 1).
std::vector<double> filter_valid(std::span<const double> src, int h, int w,
                                 const std::vector<double>& taps) {
  const int n = static_cast<int>(taps.size());
  const int oh = h - n + 1;
  const int ow = w - n + 1;
  std::vector<double> rows(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    const double* s = src.data() + static_cast<std::size_t>(y) * w;
    double* d = rows.data() + static_cast<std::size_t>(y) * ow;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += taps[static_cast<std::size_t>(k)] * s[x + k];
      d[x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow, 0.0);
  for (int y = 0; y < oh; ++y) {
    double* d = out.data() + static_cast<std::size_t>(y) * ow;
    for (int k = 0; k < n; ++k) {
      const double t = taps[static_cast<std::size_t>(k)];
      const double* s = rows.data() + static_cast<std::size_t>(y + k) * ow;
      for (int x = 0; x < ow; ++x) d[x] += t * s[x];
    }
  }
  return out;
}

}  // namespace

void SsimParams::validate() const {
  if (window < 1 || window % 2 == 0) throw ArgumentError("SSIM window must be a positive odd size");
  if (!(sigma > 0.0)) throw ArgumentError("SSIM sigma must be positive");
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw ArgumentError("SSIM constants K1 and K2 must be positive");
  if (!(dynamic_range > 0.0)) throw ArgumentError("SSIM dynamic range must be positive");
}

std::vector<double> SsimParams::taps() const {
  std::vector<double> t(static_cast<std::size_t>(window));
  const int half = window / 2;
  double sum = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - half;
    t[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += t[static_cast<std::size_t>(i)];
  }
  for (double& v : t) v /= sum;
  return t;
}

std::vector<double> luma(const Image& img) {
  std::vector<double> y(img.pixel_count());
  const auto d = img.data();
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = 0.299 * d[i * 3] + 0.587 * d[i * 3 + 1] + 0.114 * d[i * 3 + 2];
  }
  return y;
}

double ssim_plane(std::span<const double> a, std::span<const double> b, int height, int width,
                  const SsimParams& params) {
  params.validate();
  const std::size_t n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  if (a.size() != n || b.size() != n) throw ShapeError("ssim: plane sizes do not match");
  if (height < params.window || width < params.window) {
    throw ArgumentError("ssim: image " + std::to_string(width) + "x" + std::to_string(height) +
                        " is smaller than the " + std::to_string(params.window) + "-pixel window");
  }
  const auto taps = params.taps();
  std::vector<double> aa(n), bb(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto mu_a = filter_valid(a, height, width, taps);
  const auto mu_b = filter_valid(b, height, width, taps);
  const auto e_aa = filter_valid(aa, height, width, taps);
  const auto e_bb = filter_valid(bb, height, width, taps);
  const auto e_ab = filter_valid(ab, height, width, taps);

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double va = e_aa[i] - ma * ma;
    const double vb = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return sum / static_cast<double>(mu_a.size());
}

double ssim(const Image& a, const Image& b, const SsimParams& params) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw ShapeError("ssim: images differ in size (" + std::to_string(a.width()) + "x" +
                     std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                     std::to_string(b.height()) + ")");
  }
  return ssim_plane(luma(a), luma(b), a.height(), a.width(), params);
}

}  // namespace nst
