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

#include "nst/smooth.hpp"

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nst/error.hpp"

namespace nst {
namespace {

using Plane = std::vector<double>;

// Mean over the clipped (2r+1)^2 window around every pixel.
Plane box_mean(const Plane& src, int h, int w, int r) {
  Plane tmp(src.size());
  Plane out(src.size());
  std::vector<double> prefix(static_cast<std::size_t>(std::max(h, w)) + 1);
  for (int y = 0; y < h; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * w;
    prefix[0] = 0.0;
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + row[x];
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(0, x - r);
      const int hi = std::min(w - 1, x + r);
      tmp[static_cast<std::size_t>(y) * w + x] = (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1);
    }
  }
  for (int x = 0; x < w; ++x) {
    prefix[0] = 0.0;
    for (int y = 0; y < h; ++y) prefix[y + 1] = prefix[y] + tmp[static_cast<std::size_t>(y) * w + x];
    for (int y = 0; y < h; ++y) {
      const int lo = std::max(0, y - r);
      const int hi = std::min(h - 1, y + r);
      out[static_cast<std::size_t>(y) * w + x] = (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1);
    }
  }
  return out;
}

Plane channel_plane(const Image& img, int c) {
  Plane p(img.pixel_count());
  const auto d = img.data();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = d[i * 3 + static_cast<std::size_t>(c)];
  return p;
}

Plane product(const Plane& a, const Plane& b) {
  Plane p(a.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] * b[i];
  return p;
}

}  // namespace

Image smooth(const Image& stylized, const Image& guide, const GuidedFilterParams& params) {
  if (stylized.height() != guide.height() || stylized.width() != guide.width()) {
    throw ShapeError("smooth: stylized and guide images differ in size");
  }
  if (params.radius < 0 || !(params.epsilon > 0.0)) {
    throw ArgumentError("smooth: radius must be >= 0 and epsilon > 0");
  }
  const int h = guide.height();
  const int w = guide.width();
  const int r = params.radius;
  const std::size_t n = guide.pixel_count();

  std::array<Plane, 3> g;
  std::array<Plane, 3> mean_g;
  for (int c = 0; c < 3; ++c) {
    g[c] = channel_plane(guide, c);
    mean_g[c] = box_mean(g[c], h, w, r);
  }
  // Guide covariance, upper triangle: rr, rg, rb, gg, gb, bb.
  constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
  std::array<Plane, 6> var_g;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    var_g[k] = box_mean(product(g[i], g[j]), h, w, r);
    for (std::size_t p = 0; p < n; ++p) var_g[k][p] -= mean_g[i][p] * mean_g[j][p];
  }

  // Inverse of (Sigma + eps I) per pixel, shared by the three output channels.
  std::vector<Eigen::Matrix3d> inv(n);
  for (std::size_t p = 0; p < n; ++p) {
    Eigen::Matrix3d s;
    s << var_g[0][p], var_g[1][p], var_g[2][p],
         var_g[1][p], var_g[3][p], var_g[4][p],
         var_g[2][p], var_g[4][p], var_g[5][p];
    s.diagonal().array() += params.epsilon;
    inv[p] = s.inverse();
  }

  std::vector<float> out(n * 3);
  for (int c = 0; c < 3; ++c) {
    const Plane src = channel_plane(stylized, c);
    const Plane mean_p = box_mean(src, h, w, r);
    std::array<Plane, 3> cov_gp;
    for (int i = 0; i < 3; ++i) {
      cov_gp[i] = box_mean(product(g[i], src), h, w, r);
      for (std::size_t p = 0; p < n; ++p) cov_gp[i][p] -= mean_g[i][p] * mean_p[p];
    }
    std::array<Plane, 3> a{Plane(n), Plane(n), Plane(n)};
    Plane b(n);
    for (std::size_t p = 0; p < n; ++p) {
      const Eigen::Vector3d coef = inv[p] * Eigen::Vector3d(cov_gp[0][p], cov_gp[1][p], cov_gp[2][p]);
      a[0][p] = coef[0];
      a[1][p] = coef[1];
      a[2][p] = coef[2];
      b[p] = mean_p[p] - coef[0] * mean_g[0][p] - coef[1] * mean_g[1][p] - coef[2] * mean_g[2][p];
    }
    const Plane mean_b = box_mean(b, h, w, r);
    std::array<Plane, 3> mean_a;
    for (int i = 0; i < 3; ++i) mean_a[i] = box_mean(a[i], h, w, r);
    for (std::size_t p = 0; p < n; ++p) {
      const double q = mean_a[0][p] * g[0][p] + mean_a[1][p] * g[1][p] + mean_a[2][p] * g[2][p] + mean_b[p];
      out[p * 3 + static_cast<std::size_t>(c)] = static_cast<float>(q);
    }
  }
  return Image(h, w, std::move(out));
}

}  // namespace nst
