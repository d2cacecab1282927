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

#include <array>
#include <span>
#include <string>
#include <vector>

#include "nst/layers.hpp"
#include "nst/tensor.hpp"
#include "nst/weights.hpp"

namespace nst {

/// Depth of a VGG-19 encoder slice: level L ends at relu{L}_1.
class EncoderLevel {
 public:
  /// Throws ArgumentError outside 1..5.
  explicit EncoderLevel(int level);

  int value() const noexcept { return level_; }
  /// Number of 2x2 pooling layers before relu{L}_1.
  int pool_count() const noexcept { return level_ - 1; }

  friend bool operator==(EncoderLevel, EncoderLevel) = default;
  friend auto operator<=>(EncoderLevel, EncoderLevel) = default;

 private:
  int level_;
};

inline constexpr int kMaxLevel = 5;

/// Channel widths of the five VGG-19 blocks. The standard network is
/// {64, 128, 256, 512, 512}; narrower stacks are used for synthetic weights.
struct Architecture {
  std::array<int, 5> widths{64, 128, 256, 512, 512};

  static Architecture vgg19() { return {}; }
  /// Reads block widths from conv{b}_1.weight; absent blocks keep VGG-19 widths.
  static Architecture infer(const WeightStore& store);

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

enum class UpsampleMode { kNearest, kUnpool };

/// A decoder family: tensor name prefix plus how it undoes pooling.
/// Decoder tensors are named "{prefix}{level}.conv{K}.weight|bias", K counted
/// from the decoder input.
struct DecoderKind {
  std::string prefix;
  UpsampleMode mode = UpsampleMode::kNearest;
};

/// Reconstruction decoders of the multi-level cascade.
DecoderKind reconstruction_decoder();
/// Single-level AdaIN decoder (trained with the style loss).
DecoderKind adain_decoder();
/// Unpooling decoders of the photorealistic cascade.
DecoderKind unpooling_decoder();

struct LayerShape {
  std::string name;
  int in_channels = 0;
  int out_channels = 0;
};

/// Convolutions of the encoder slice up to relu{level}_1, in order.
std::vector<LayerShape> encoder_layers(const Architecture& arch, EncoderLevel level);
/// Convolutions of the mirrored decoder for `level`, in order.
std::vector<LayerShape> decoder_layers(const Architecture& arch, const DecoderKind& kind,
                                       EncoderLevel level);

std::vector<TensorSpec> encoder_manifest(const Architecture& arch, EncoderLevel level);
std::vector<TensorSpec> decoder_manifest(const Architecture& arch, const DecoderKind& kind,
                                         EncoderLevel level);

/// BGR means (0..255 scale) subtracted before the first convolution.
inline constexpr std::array<float, 3> kVggMeanBgr{103.939f, 116.779f, 123.68f};

/// RGB in [0, 1] -> 3-channel BGR map in VGG units (x255, mean subtracted).
FeatureMap preprocess(const Image& img);

struct Encoded {
  FeatureMap features;
  PoolIndices indices;
};

/// Activations at relu{level}_1 plus the pooling switches met along the way.
/// Image height and width must be divisible by 2^(level-1).
Encoded encode(const Image& img, EncoderLevel level, const WeightStore& weights);

/// Activations at relu1_1 .. relu{top}_1 from a single forward pass.
std::vector<FeatureMap> encode_pyramid(const Image& img, EncoderLevel top,
                                       const WeightStore& weights);

/// Maps relu{level}_1 features back to an RGB image clamped to [0, 1].
/// Unpooling decoders need the switches from the matching encode call.
Image decode(const FeatureMap& features, EncoderLevel level, const WeightStore& weights,
             const DecoderKind& kind, const PoolIndices* indices = nullptr);

}  // namespace nst
