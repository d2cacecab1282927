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

#include "nst/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nst/error.hpp"

namespace nst {
namespace {

std::size_t checked_volume(int a, int b, int c, const char* what) {
  if (a < 0 || b < 0 || c < 0) {
    throw ShapeError(std::string(what) + ": negative dimension");
  }
  return static_cast<std::size_t>(a) * static_cast<std::size_t>(b) * static_cast<std::size_t>(c);
}

bool finite(std::span<const float> v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return std::isfinite(x); });
}

}  // namespace

FeatureMap::FeatureMap(int channels, int height, int width)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(checked_volume(channels, height, width, "FeatureMap"), 0.0f) {}

FeatureMap::FeatureMap(int channels, int height, int width, std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  if (data_.size() != checked_volume(channels, height, width, "FeatureMap")) {
    throw ShapeError("FeatureMap: data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(channels) + "x" +
                     std::to_string(height) + "x" + std::to_string(width));
  }
  if (!finite(data_)) throw ArgumentError("FeatureMap: non-finite element");
}

bool FeatureMap::all_finite() const noexcept { return finite(data_); }

FeatureMatrix::FeatureMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(checked_volume(rows, cols, 1, "FeatureMatrix"), 0.0f) {}

FeatureMatrix::FeatureMatrix(int rows, int cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != checked_volume(rows, cols, 1, "FeatureMatrix")) {
    throw ShapeError("FeatureMatrix: data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Image::Image(int height, int width)
    : height_(height), width_(width), data_(checked_volume(height, width, 3, "Image"), 0.0f) {}

Image::Image(int height, int width, std::vector<float> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (data_.size() != checked_volume(height, width, 3, "Image")) {
    throw ShapeError("Image: data length " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(height) + "x" + std::to_string(width) + "x3");
  }
  for (float& v : data_) {
    if (std::isnan(v)) throw ArgumentError("Image: NaN pixel value");
    v = std::clamp(v, 0.0f, 1.0f);
  }
}

FeatureMatrix to_matrix(FeatureMap f) {
  const int rows = f.channels();
  const int cols = static_cast<int>(f.plane_size());
  return FeatureMatrix(rows, cols, std::move(f).release());
}

FeatureMap from_matrix(FeatureMatrix m, int height, int width) {
  if (static_cast<std::size_t>(height) * static_cast<std::size_t>(width) !=
      static_cast<std::size_t>(m.cols())) {
    throw ShapeError("from_matrix: " + std::to_string(m.cols()) + " columns cannot form " +
                     std::to_string(height) + "x" + std::to_string(width));
  }
  const int channels = m.rows();
  return FeatureMap(channels, height, width, std::move(m).release());
}

std::vector<ChannelStats> channel_stats(const FeatureMap& f) {
  if (f.plane_size() == 0) throw ShapeError("channel_stats: empty spatial plane");
  std::vector<ChannelStats> stats(static_cast<std::size_t>(f.channels()));
  const double n = static_cast<double>(f.plane_size());
  for (int c = 0; c < f.channels(); ++c) {
    const auto plane = f.channel(c);
    double sum = 0.0;
    for (float v : plane) sum += v;
    const double mean = sum / n;
    double sq = 0.0;
    for (float v : plane) {
      const double d = v - mean;
      sq += d * d;
    }
    stats[static_cast<std::size_t>(c)] = {mean, sq / n};
  }
  return stats;
}

CenteredMatrix center(const FeatureMatrix& m) {
  if (m.cols() < 1) throw ShapeError("center: matrix has no columns");
  CenteredMatrix out{FeatureMatrix(m.rows(), m.cols()), std::vector<double>(m.rows(), 0.0)};
  for (int r = 0; r < m.rows(); ++r) {
    const auto src = m.row(r);
    double sum = 0.0;
    for (float v : src) sum += v;
    const double mean = sum / static_cast<double>(m.cols());
    out.mean[static_cast<std::size_t>(r)] = mean;
    auto dst = out.centered.row(r);
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k] = static_cast<float>(static_cast<double>(src[k]) - mean);
    }
  }
  return out;
}

FeatureMatrix recenter(const FeatureMatrix& m, std::span<const double> mean) {
  if (mean.size() != static_cast<std::size_t>(m.rows())) {
    throw ShapeError("recenter: mean vector length does not match row count");
  }
  FeatureMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    const auto src = m.row(r);
    auto dst = out.row(r);
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k] = static_cast<float>(static_cast<double>(src[k]) + mean[static_cast<std::size_t>(r)]);
    }
  }
  return out;
}

}  // namespace nst
