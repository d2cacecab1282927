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

#include "nst/weights.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <sstream>

#include "nst/error.hpp"

namespace nst {
namespace {

constexpr char kMagic[4] = {'N', 'S', 'T', 'W'};
constexpr std::uint8_t kDtypeF32 = 0;

std::string shape_string(std::span<const std::uint32_t> shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ')';
  return os.str();
}

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::byte*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <typename T>
  void le(T v) {
    static_assert(std::is_unsigned_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffu));
    }
  }
  void f32(float v) { le(std::bit_cast<std::uint32_t>(v)); }

  std::vector<std::byte> take() && { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

  std::span<const std::byte> take(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw FormatError(FormatError::Kind::kTruncated,
                        std::string("weight file truncated while reading ") + what);
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T le(const char* what) {
    const auto s = take(sizeof(T), what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(std::to_integer<std::uint32_t>(s[i])) << (8 * i);
    }
    return v;
  }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t Tensor::numel() const noexcept {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

WeightStore::WeightStore(Map tensors) : tensors_(std::move(tensors)) {
  for (const auto& [name, t] : tensors_) {
    if (t.numel() != t.values.size()) {
      throw ShapeError("tensor '" + name + "' has " + std::to_string(t.values.size()) +
                       " values for shape " + shape_string(t.shape));
    }
  }
}

const Tensor& WeightStore::at(std::string_view name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) {
    throw ManifestError("missing weight tensor '" + std::string(name) + "'");
  }
  return it->second;
}

void validate(const WeightStore& store, std::span<const TensorSpec> manifest) {
  for (const auto& spec : manifest) {
    const Tensor& t = store.at(spec.name);
    if (t.shape != spec.shape) {
      throw ManifestError("weight tensor '" + spec.name + "' has shape " + shape_string(t.shape) +
                          ", expected " + shape_string(spec.shape));
    }
  }
}

std::vector<std::byte> serialize_weights(const WeightStore& store) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.le<std::uint32_t>(kWeightFormatVersion);
  if (store.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("too many tensors for the NSTW format");
  }
  w.le<std::uint32_t>(static_cast<std::uint32_t>(store.size()));
  for (const auto& [name, t] : store.tensors()) {
    if (name.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw ArgumentError("tensor name too long: " + name.substr(0, 32) + "...");
    }
    if (t.shape.size() > std::numeric_limits<std::uint8_t>::max()) {
      throw ArgumentError("tensor '" + name + "' has too many dimensions");
    }
    w.le<std::uint16_t>(static_cast<std::uint16_t>(name.size()));
    w.bytes(name.data(), name.size());
    w.le<std::uint8_t>(kDtypeF32);
    w.le<std::uint8_t>(static_cast<std::uint8_t>(t.shape.size()));
    for (auto d : t.shape) w.le<std::uint32_t>(d);
    for (float v : t.values) w.f32(v);
  }
  return std::move(w).take();
}

WeightStore parse_weights(std::span<const std::byte> bytes) {
  Reader r(bytes);
  const auto magic = r.take(sizeof(kMagic), "magic");
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic, "not an NSTW weight file (bad magic)");
  }
  const auto version = r.le<std::uint32_t>("version");
  if (version != kWeightFormatVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "unsupported NSTW version " + std::to_string(version));
  }
  const auto count = r.le<std::uint32_t>("tensor count");

  WeightStore::Map tensors;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = r.le<std::uint16_t>("name length");
    const auto name_bytes = r.take(name_len, "tensor name");
    std::string name(reinterpret_cast<const char*>(name_bytes.data()), name_bytes.size());
    const auto dtype = r.le<std::uint8_t>("dtype");
    if (dtype != kDtypeF32) {
      throw UnsupportedDtypeError("tensor '" + name + "' has dtype code " +
                                  std::to_string(dtype) + "; only f32 (0) is supported");
    }
    const auto ndim = r.le<std::uint8_t>("ndim");
    Tensor t;
    t.shape.resize(ndim);
    std::size_t numel = 1;
    for (auto& d : t.shape) {
      d = r.le<std::uint32_t>("dimension");
      if (d != 0 && numel > r.remaining() / d) {
        throw FormatError(FormatError::Kind::kTruncated,
                          "weight file truncated: tensor '" + name + "' payload exceeds file size");
      }
      numel *= d;
    }
    const auto payload = r.take(numel * sizeof(float), "tensor payload");
    t.values.resize(numel);
    for (std::size_t k = 0; k < numel; ++k) {
      std::uint32_t bits = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        bits |= std::to_integer<std::uint32_t>(payload[k * 4 + b]) << (8 * b);
      }
      t.values[k] = std::bit_cast<float>(bits);
    }
    if (!tensors.emplace(name, std::move(t)).second) {
      throw FormatError(FormatError::Kind::kBadHeader, "duplicate tensor name '" + name + "'");
    }
  }
  if (r.remaining() != 0) {
    throw FormatError(FormatError::Kind::kTrailingData,
                      std::to_string(r.remaining()) + " trailing bytes after last tensor");
  }
  return WeightStore(std::move(tensors));
}

WeightStore load_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kIo, "cannot open weight file " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw FormatError(FormatError::Kind::kIo, "error reading " + path.string());
  return parse_weights(std::as_bytes(std::span<const char>(raw)));
}

WeightStore load_weights(const std::filesystem::path& path, std::span<const TensorSpec> manifest) {
  WeightStore store = load_weights(path);
  validate(store, manifest);
  return store;
}

void save_weights(const std::filesystem::path& path, const WeightStore& store) {
  const auto bytes = serialize_weights(store);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kIo, "cannot create weight file " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Kind::kIo, "error writing " + path.string());
}

}  // namespace nst
