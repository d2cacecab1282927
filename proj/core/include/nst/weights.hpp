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
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nst {

/// Named dense f32 tensor as stored in a weight file.
struct Tensor {
  std::vector<std::uint32_t> shape;
  std::vector<float> values;

  std::size_t numel() const noexcept;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Immutable name -> tensor collection. Lookups of absent names throw
/// ManifestError.
class WeightStore {
 public:
  using Map = std::map<std::string, Tensor, std::less<>>;

  WeightStore() = default;
  /// Throws ShapeError when a tensor's value count disagrees with its shape.
  explicit WeightStore(Map tensors);

  const Tensor& at(std::string_view name) const;
  bool contains(std::string_view name) const { return tensors_.find(name) != tensors_.end(); }
  std::size_t size() const noexcept { return tensors_.size(); }
  const Map& tensors() const noexcept { return tensors_; }

  friend bool operator==(const WeightStore&, const WeightStore&) = default;

 private:
  Map tensors_;
};

/// Expected name and shape of one tensor in an architecture.
struct TensorSpec {
  std::string name;
  std::vector<std::uint32_t> shape;
};

/// Throws ManifestError naming the first missing or misshapen tensor.
void validate(const WeightStore& store, std::span<const TensorSpec> manifest);

// NSTW container, all integers little-endian, no padding:
//   "NSTW" | version u32 (=1) | tensor_count u32
//   per tensor: name_len u16 | name (UTF-8) | dtype u8 (0 = f32) | ndim u8 |
//               dims u32 x ndim | payload f32 x prod(dims)
inline constexpr std::uint32_t kWeightFormatVersion = 1;

std::vector<std::byte> serialize_weights(const WeightStore& store);
WeightStore parse_weights(std::span<const std::byte> bytes);

WeightStore load_weights(const std::filesystem::path& path);
/// Loads and checks the result against `manifest`.
WeightStore load_weights(const std::filesystem::path& path, std::span<const TensorSpec> manifest);
void save_weights(const std::filesystem::path& path, const WeightStore& store);

}  // namespace nst
