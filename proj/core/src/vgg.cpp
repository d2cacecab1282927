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

#include "nst/vgg.hpp"

#include <algorithm>
#include <string>
#include <variant>

#include "nst/error.hpp"

namespace nst {
namespace {

struct ConvOp {
  std::string name;
  int block;  // 0-based block index of the output width
  int in_block;  // -1 for the RGB input
};
struct PoolOp {};
using EncoderOp = std::variant<ConvOp, PoolOp>;

// VGG-19 up to relu5_1.
const std::vector<EncoderOp>& vgg_ops() {
  static const std::vector<EncoderOp> ops = [] {
    std::vector<EncoderOp> v;
    constexpr std::array<int, 5> convs_per_block{2, 2, 4, 4, 1};
    int prev = -1;
    for (int b = 0; b < 5; ++b) {
      for (int i = 0; i < convs_per_block[static_cast<std::size_t>(b)]; ++i) {
        v.emplace_back(ConvOp{"conv" + std::to_string(b + 1) + "_" + std::to_string(i + 1), b, prev});
        prev = b;
      }
      if (b < 4) v.emplace_back(PoolOp{});
    }
    return v;
  }();
  return ops;
}

// Number of ops making up the slice that ends at relu{level}_1.
std::size_t slice_length(EncoderLevel level) {
  const auto& ops = vgg_ops();
  const std::string last = "conv" + std::to_string(level.value()) + "_1";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (const auto* c = std::get_if<ConvOp>(&ops[i]); c && c->name == last) return i + 1;
  }
  throw ArgumentError("unknown encoder level");
}

int width_of(const Architecture& arch, int block) {
  return block < 0 ? 3 : arch.widths[static_cast<std::size_t>(block)];
}

std::vector<TensorSpec> conv_specs(const std::vector<LayerShape>& layers) {
  std::vector<TensorSpec> specs;
  for (const auto& l : layers) {
    specs.push_back({l.name + ".weight",
                     {static_cast<std::uint32_t>(l.out_channels),
                      static_cast<std::uint32_t>(l.in_channels), 3u, 3u}});
    specs.push_back({l.name + ".bias", {static_cast<std::uint32_t>(l.out_channels)}});
  }
  return specs;
}

FeatureMap conv_layer(const FeatureMap& in, const WeightStore& w, const std::string& name) {
  return conv2d(in, w.at(name + ".weight"), w.at(name + ".bias"));
}

void check_divisible(const Image& img, EncoderLevel level) {
  const int div = 1 << level.pool_count();
  if (img.height() % div != 0 || img.width() % div != 0) {
    throw ShapeError("encoder level " + std::to_string(level.value()) + " needs image sides divisible by " +
                     std::to_string(div) + ", got " + std::to_string(img.width()) + "x" +
                     std::to_string(img.height()));
  }
}

template <typename OnActivation>
Encoded run_encoder(const Image& img, EncoderLevel level, const WeightStore& weights,
                    OnActivation&& on_activation) {
  check_divisible(img, level);
  const auto& ops = vgg_ops();
  const std::size_t n = slice_length(level);
  Encoded out{preprocess(img), {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* conv = std::get_if<ConvOp>(&ops[i])) {
      out.features = conv_layer(out.features, weights, conv->name);
      relu_inplace(out.features);
      if (conv->name.ends_with("_1")) on_activation(out.features);
    } else {
      auto pooled = maxpool2(out.features);
      out.features = std::move(pooled.output);
      out.indices.layers.push_back(std::move(pooled.argmax));
    }
  }
  return out;
}

}  // namespace

EncoderLevel::EncoderLevel(int level) : level_(level) {
  if (level < 1 || level > kMaxLevel) {
    throw ArgumentError("encoder level must be in 1..5, got " + std::to_string(level));
  }
}

Architecture Architecture::infer(const WeightStore& store) {
  Architecture arch;
  for (int b = 0; b < 5; ++b) {
    const std::string name = "conv" + std::to_string(b + 1) + "_1.weight";
    if (!store.contains(name)) continue;
    const auto& shape = store.at(name).shape;
    if (shape.size() != 4 || shape[0] == 0) {
      throw ManifestError("weight tensor '" + name + "' is not a 4-D convolution kernel");
    }
    arch.widths[static_cast<std::size_t>(b)] = static_cast<int>(shape[0]);
  }
  return arch;
}

DecoderKind reconstruction_decoder() { return {"decoder", UpsampleMode::kNearest}; }
DecoderKind adain_decoder() { return {"adain_decoder", UpsampleMode::kNearest}; }
DecoderKind unpooling_decoder() { return {"photo_decoder", UpsampleMode::kUnpool}; }

std::vector<LayerShape> encoder_layers(const Architecture& arch, EncoderLevel level) {
  std::vector<LayerShape> layers;
  const auto& ops = vgg_ops();
  for (std::size_t i = 0, n = slice_length(level); i < n; ++i) {
    if (const auto* c = std::get_if<ConvOp>(&ops[i])) {
      layers.push_back({c->name, width_of(arch, c->in_block), width_of(arch, c->block)});
    }
  }
  return layers;
}

std::vector<LayerShape> decoder_layers(const Architecture& arch, const DecoderKind& kind,
                                       EncoderLevel level) {
  const auto enc = encoder_layers(arch, level);
  std::vector<LayerShape> layers;
  const std::string prefix = kind.prefix + std::to_string(level.value()) + ".conv";
  int k = 1;
  for (auto it = enc.rbegin(); it != enc.rend(); ++it) {
    layers.push_back({prefix + std::to_string(k++), it->out_channels, it->in_channels});
  }
  return layers;
}

std::vector<TensorSpec> encoder_manifest(const Architecture& arch, EncoderLevel level) {
  return conv_specs(encoder_layers(arch, level));
}

std::vector<TensorSpec> decoder_manifest(const Architecture& arch, const DecoderKind& kind,
                                         EncoderLevel level) {
  return conv_specs(decoder_layers(arch, kind, level));
}

FeatureMap preprocess(const Image& img) {
  FeatureMap f(3, img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        // BGR channel c reads RGB channel 2 - c.
        f.at(c, y, x) = img.at(y, x, 2 - c) * 255.0f - kVggMeanBgr[static_cast<std::size_t>(c)];
      }
    }
  }
  return f;
}

Encoded encode(const Image& img, EncoderLevel level, const WeightStore& weights) {
  return run_encoder(img, level, weights, [](const FeatureMap&) {});
}

std::vector<FeatureMap> encode_pyramid(const Image& img, EncoderLevel top,
                                       const WeightStore& weights) {
  std::vector<FeatureMap> acts;
  run_encoder(img, top, weights, [&](const FeatureMap& f) { acts.push_back(f); });
  return acts;
}

Image decode(const FeatureMap& features, EncoderLevel level, const WeightStore& weights,
             const DecoderKind& kind, const PoolIndices* indices) {
  if (kind.mode == UpsampleMode::kUnpool) {
    if (indices == nullptr) throw ArgumentError("unpooling decoder needs pooling indices");
    if (indices->layers.size() != static_cast<std::size_t>(level.pool_count())) {
      throw ArgumentError("pooling indices record " + std::to_string(indices->layers.size()) +
                          " layers, decoder level " + std::to_string(level.value()) + " needs " +
                          std::to_string(level.pool_count()));
    }
  }
  const auto& ops = vgg_ops();
  const std::size_t n = slice_length(level);
  const std::string prefix = kind.prefix + std::to_string(level.value()) + ".conv";

  FeatureMap x = features;
  int k = 1;
  int pools_left = level.pool_count();
  for (std::size_t i = n; i-- > 0;) {
    if (std::holds_alternative<ConvOp>(ops[i])) {
      x = conv_layer(x, weights, prefix + std::to_string(k++));
      if (i != 0) relu_inplace(x);
    } else {
      --pools_left;
      x = kind.mode == UpsampleMode::kUnpool
              ? unpool(x, indices->layers[static_cast<std::size_t>(pools_left)])
              : upsample_nearest2(x);
    }
  }
  if (x.channels() != 3) throw ManifestError("decoder output must have 3 channels");

  std::vector<float> rgb(x.plane_size() * 3);
  const auto r = x.channel(0);
  const auto g = x.channel(1);
  const auto b = x.channel(2);
  for (std::size_t p = 0; p < x.plane_size(); ++p) {
    rgb[p * 3 + 0] = r[p];
    rgb[p * 3 + 1] = g[p];
    rgb[p * 3 + 2] = b[p];
  }
  return Image(x.height(), x.width(), std::move(rgb));
}

}  // namespace nst
