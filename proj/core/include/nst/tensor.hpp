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

#include <cstddef>
#include <span>
#include <vector>

namespace nst {

/// Dense C x H x W activation tensor, row-major in channel, row, column order.
///
/// This is the only layout used by the library. Elements are finite; the
/// data-taking constructor rejects NaN and Inf.
class FeatureMap {
 public:
  FeatureMap() = default;
  /// Zero-filled map.
  FeatureMap(int channels, int height, int width);
  FeatureMap(int channels, int height, int width, std::vector<float> data);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }
  std::span<const float> channel(int c) const noexcept {
    return {data_.data() + static_cast<std::size_t>(c) * plane_size(), plane_size()};
  }
  std::span<float> channel(int c) noexcept {
    return {data_.data() + static_cast<std::size_t>(c) * plane_size(), plane_size()};
  }

  float at(int c, int y, int x) const noexcept { return data_[index(c, y, x)]; }
  float& at(int c, int y, int x) noexcept { return data_[index(c, y, x)]; }

  bool all_finite() const noexcept;
  std::vector<float> release() && noexcept { return std::move(data_); }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::size_t index(int c, int y, int x) const noexcept {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

/// N x M matrix view of a feature map: one row per channel, one column per
/// spatial position. Shares the FeatureMap memory layout exactly.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(int rows, int cols);
  FeatureMatrix(int rows, int cols, std::vector<float> data);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }
  std::span<const float> row(int r) const noexcept {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<float> row(int r) noexcept {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }

  float at(int r, int c) const noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  float& at(int r, int c) noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<float> release() && noexcept { return std::move(data_); }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<float> data_;
};

/// H x W RGB raster with interleaved channels, every value in [0, 1].
class Image {
 public:
  Image() = default;
  /// Black image.
  Image(int height, int width);
  /// Values are clamped into [0, 1]; NaN is rejected with ArgumentError.
  Image(int height, int width, std::vector<float> data);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> data() const noexcept { return data_; }

  float at(int y, int x, int c) const noexcept {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

struct ChannelStats {
  double mean = 0.0;
  /// Population variance (divides by H*W).
  double variance = 0.0;
};

struct CenteredMatrix {
  FeatureMatrix centered;
  std::vector<double> mean;
};

FeatureMatrix to_matrix(FeatureMap f);
FeatureMap from_matrix(FeatureMatrix m, int height, int width);

std::vector<ChannelStats> channel_stats(const FeatureMap& f);

/// Subtracts each row's mean. Means accumulate in double.
CenteredMatrix center(const FeatureMatrix& m);

/// Adds `mean[r]` back to every element of row r.
FeatureMatrix recenter(const FeatureMatrix& m, std::span<const double> mean);

}  // namespace nst
