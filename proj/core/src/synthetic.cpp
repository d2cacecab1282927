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

#include "nst/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nst/error.hpp"

namespace nst {
namespace {

// Channels 0..5: (v + 0.5, 1.5 - v) per color; channel 6: constant one.
constexpr int kColorCarriers = 6;
constexpr int kOnes = 6;
constexpr int kCarriers = 7;

// SplitMix64; bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

struct ConvBuilder {
  Tensor weight;
  Tensor bias;

  ConvBuilder(int out, int in)
      : weight{{static_cast<std::uint32_t>(out), static_cast<std::uint32_t>(in), 3u, 3u},
               std::vector<float>(static_cast<std::size_t>(out) * in * 9, 0.0f)},
        bias{{static_cast<std::uint32_t>(out)}, std::vector<float>(static_cast<std::size_t>(out), 0.0f)} {}

  float& w(int o, int i, int ky, int kx) {
    const auto in = static_cast<int>(weight.shape[1]);
    return weight.values[((static_cast<std::size_t>(o) * in + i) * 3 + ky) * 3 + kx];
  }
  void emit(WeightStore::Map& map, const std::string& name) {
    map[name + ".weight"] = std::move(weight);
    map[name + ".bias"] = std::move(bias);
  }
};

constexpr std::array<std::array<float, 3>, 3> kBinomial{{{1 / 16.f, 2 / 16.f, 1 / 16.f},
                                                         {2 / 16.f, 4 / 16.f, 2 / 16.f},
                                                         {1 / 16.f, 2 / 16.f, 1 / 16.f}}};

void random_texture(ConvBuilder& b, int out, int in, Rng& rng, double gain, double input_scale) {
  const double scale = gain * std::sqrt(2.0 / (9.0 * in)) * input_scale;
  for (int o = kCarriers; o < out; ++o) {
    const bool edge = (o % 2) == 0;
    for (int i = 0; i < in; ++i) {
      double taps[9];
      double mean = 0.0;
      for (double& t : taps) {
        t = rng.uniform(-1.0, 1.0) * std::sqrt(3.0);
        mean += t / 9.0;
      }
      for (int k = 0; k < 9; ++k) {
        const double t = edge ? taps[k] - mean : taps[k];
        b.w(o, i, k / 3, k % 3) = static_cast<float>(t * scale);
      }
    }
    b.bias.values[static_cast<std::size_t>(o)] = static_cast<float>(rng.uniform(-0.05, 0.05));
  }
}

// Pool-switch helpers for the unpooling decoders. The constant channel pools
// with every argmax at offset 0, so once unpooled it marks the top-left
// corner of each 2x2 block. Summing a carrier's block onto that corner (masked
// with kCornerGate) and spreading it back over the block undoes unpooling
// exactly, giving the same result as nearest upsampling of the pooled map.
constexpr float kCornerGate = 256.0f;

void set_center(ConvBuilder& b, int o, int i, float v) { b.w(o, i, 1, 1) = v; }

// Taps of a 3x3 kernel centered on q that read q + (dy, dx), dy, dx in {0, 1}
// (forward) or q - (dy, dx) (backward).
template <typename F>
void for_block_taps(bool forward, F&& f) {
  for (int dy = 0; dy < 2; ++dy) {
    for (int dx = 0; dx < 2; ++dx) f(forward ? 1 + dy : 1 - dy, forward ? 1 + dx : 1 - dx);
  }
}

void add_decoder(WeightStore::Map& map, const Architecture& arch, const DecoderKind& kind,
                 EncoderLevel level) {
  const auto enc = encoder_layers(arch, level);
  const auto dec = decoder_layers(arch, kind, level);
  const bool unpool = kind.mode == UpsampleMode::kUnpool;
  // Convs since the last upsampling step; -1 before the first one.
  int since_upsample = -1;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const auto& mirrored = enc[enc.size() - 1 - k];
    const auto& layer = dec[k];
    ConvBuilder b(layer.out_channels, layer.in_channels);
    const bool final_conv = layer.out_channels == 3;
    if (!final_conv) b.bias.values[kOnes] = 1.0f;

    if (unpool && since_upsample == 0) {
      for (int c = 0; c < kColorCarriers; ++c) {
        for_block_taps(true, [&](int ky, int kx) { b.w(c, c, ky, kx) = 1.0f; });
        set_center(b, c, kOnes, kCornerGate);
        b.bias.values[static_cast<std::size_t>(c)] = -kCornerGate;
      }
    } else if (final_conv) {
      // Midrange of the max / min carriers.
      for (int c = 0; c < 3; ++c) {
        if (unpool && since_upsample == 1) {
          for_block_taps(false, [&](int ky, int kx) {
            b.w(c, 2 * c, ky, kx) = 0.5f;
            b.w(c, 2 * c + 1, ky, kx) = -0.5f;
          });
        } else {
          set_center(b, c, 2 * c, 0.5f);
          set_center(b, c, 2 * c + 1, -0.5f);
        }
        b.bias.values[static_cast<std::size_t>(c)] = 0.5f;
      }
    } else {
      for (int c = 0; c < kColorCarriers; ++c) {
        if (unpool && since_upsample == 1) {
          for_block_taps(false, [&](int ky, int kx) { b.w(c, c, ky, kx) = 1.0f; });
        } else if ((!unpool && since_upsample == 0) || (unpool && since_upsample == 2)) {
          for (int ky = 0; ky < 3; ++ky) {
            for (int kx = 0; kx < 3; ++kx) b.w(c, c, ky, kx) = kBinomial[ky][kx];
          }
        } else {
          set_center(b, c, c, 1.0f);
        }
      }
    }
    b.emit(map, layer.name);
    // The mirror of conv{b}_1 (b > 1) is followed by an upsampling step.
    if (mirrored.name.ends_with("_1") && mirrored.name != "conv1_1") {
      since_upsample = 0;
    } else if (since_upsample >= 0) {
      ++since_upsample;
    }
  }
}

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

std::array<double, 3> random_color(Rng& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

// Random values on a grid with the given cell size, bilinearly interpolated.
class ValueNoise {
 public:
  ValueNoise(int width, int height, int cell, Rng& rng)
      : cell_(cell), gw_(width / cell + 2), grid_(static_cast<std::size_t>(gw_) * (height / cell + 2)) {
    for (double& g : grid_) g = rng.uniform(-1.0, 1.0);
  }

  double at(int x, int y) const {
    const double gx = static_cast<double>(x) / cell_;
    const double gy = static_cast<double>(y) / cell_;
    const int ix = static_cast<int>(gx);
    const int iy = static_cast<int>(gy);
    const double ax = gx - ix;
    const double ay = gy - iy;
    return (1 - ay) * ((1 - ax) * g(ix, iy) + ax * g(ix + 1, iy)) +
           ay * ((1 - ax) * g(ix, iy + 1) + ax * g(ix + 1, iy + 1));
  }

 private:
  double g(int x, int y) const { return grid_[static_cast<std::size_t>(y) * gw_ + x]; }

  int cell_;
  int gw_;
  std::vector<double> grid_;
};

}  // namespace

Architecture compact_architecture() { return Architecture{{12, 24, 48, 96, 96}}; }

WeightStore make_synthetic_weights(const SyntheticWeightsOptions& opts) {
  for (int w : opts.arch.widths) {
    if (w < kCarriers + 2) throw ArgumentError("synthetic weights need every width >= 9");
  }
  Rng rng(opts.seed);
  WeightStore::Map map;

  for (const auto& layer : encoder_layers(opts.arch, EncoderLevel(kMaxLevel))) {
    ConvBuilder b(layer.out_channels, layer.in_channels);
    if (layer.in_channels == 3) {
      // Input is BGR * 255 - mean; RGB channel c sits at BGR index 2 - c.
      for (int c = 0; c < 3; ++c) {
        const int src = 2 - c;
        const float mean = kVggMeanBgr[static_cast<std::size_t>(src)] / 255.0f;
        b.w(2 * c, src, 1, 1) = 1.0f / 255.0f;
        b.bias.values[static_cast<std::size_t>(2 * c)] = mean + 0.5f;
        b.w(2 * c + 1, src, 1, 1) = -1.0f / 255.0f;
        b.bias.values[static_cast<std::size_t>(2 * c + 1)] = 1.5f - mean;
      }
      b.bias.values[kOnes] = 1.0f;
      random_texture(b, layer.out_channels, 3, rng, opts.texture_gain, 1.0 / 64.0);
    } else {
      for (int c = 0; c < kColorCarriers; ++c) b.w(c, c, 1, 1) = 1.0f;
      b.bias.values[kOnes] = 1.0f;
      random_texture(b, layer.out_channels, layer.in_channels, rng, opts.texture_gain, 1.0);
    }
    b.emit(map, layer.name);
  }

  for (const DecoderKind& kind : {reconstruction_decoder(), adain_decoder(), unpooling_decoder()}) {
    for (int l = 1; l <= kMaxLevel; ++l) add_decoder(map, opts.arch, kind, EncoderLevel(l));
  }
  return WeightStore(std::move(map));
}

Image make_content_image(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) throw ArgumentError("image size must be positive");
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 1);
  const auto top = random_color(rng, 0.35, 0.95);
  const auto bottom = random_color(rng, 0.05, 0.6);

  struct Blob {
    double cx, cy, rx, ry, soft;
    std::array<double, 3> color;
  };
  const double scale = std::min(width, height);
  std::vector<Blob> blobs;
  // A few large soft shapes, then small sharp objects on top.
  const int large = rng.integer(4, 7);
  const int small = rng.integer(8, 16);
  for (int i = 0; i < large + small; ++i) {
    const bool is_large = i < large;
    const double lo = is_large ? 0.08 : 0.015;
    const double hi = is_large ? 0.3 : 0.06;
    Blob b;
    b.cx = rng.uniform(0.05, 0.95) * width;
    b.cy = rng.uniform(0.1, 0.95) * height;
    b.rx = rng.uniform(lo, hi) * scale;
    b.ry = rng.uniform(lo, hi) * scale;
    b.soft = is_large ? rng.uniform(0.01, 0.04) * scale : rng.uniform(0.5, 1.5);
    b.color = random_color(rng, 0.0, 1.0);
    blobs.push_back(b);
  }
  const double fx = rng.uniform(1.0, 3.0) * 2.0 * std::numbers::pi / width;
  const double fy = rng.uniform(1.0, 3.0) * 2.0 * std::numbers::pi / height;
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const std::array<ValueNoise, 3> noise{ValueNoise(width, height, 4, rng),
                                        ValueNoise(width, height, 12, rng),
                                        ValueNoise(width, height, 32, rng)};

  std::vector<float> px(static_cast<std::size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    const double t = static_cast<double>(y) / std::max(1, height - 1);
    for (int x = 0; x < width; ++x) {
      std::array<double, 3> c;
      for (int k = 0; k < 3; ++k) c[k] = (1.0 - t) * top[k] + t * bottom[k];
      for (const auto& b : blobs) {
        const double dx = (x - b.cx) / b.rx;
        const double dy = (y - b.cy) / b.ry;
        const double d = (std::sqrt(dx * dx + dy * dy) - 1.0) * std::min(b.rx, b.ry);
        const double inside = 1.0 - smoothstep(-b.soft, b.soft, d);
        for (int k = 0; k < 3; ++k) c[k] = (1.0 - inside) * c[k] + inside * b.color[k];
      }
      const double shade = 0.85 + 0.15 * std::sin(fx * x + phase) * std::cos(fy * y);
      const double grain =
          0.02 * noise[0].at(x, y) + 0.05 * noise[1].at(x, y) + 0.06 * noise[2].at(x, y);
      for (int k = 0; k < 3; ++k) {
        px[(static_cast<std::size_t>(y) * width + x) * 3 + k] =
            static_cast<float>(c[k] * shade + grain);
      }
    }
  }
  return Image(height, width, std::move(px));
}

Image make_style_image(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) throw ArgumentError("image size must be positive");
  Rng rng(seed * 0xd1b54a32d192ed03ull + 7);
  const int palette_size = rng.integer(3, 5);
  std::vector<std::array<double, 3>> palette;
  for (int i = 0; i < palette_size; ++i) {
    auto c = random_color(rng, 0.0, 1.0);
    // Saturate: push the strongest channel up and the weakest down.
    auto hi = std::max_element(c.begin(), c.end());
    auto lo = std::min_element(c.begin(), c.end());
    *hi = std::min(1.0, *hi + 0.3);
    *lo = std::max(0.0, *lo - 0.3);
    palette.push_back(c);
  }

  struct Cell {
    double x, y;
    int color;
    int pattern;  // 0 flat, 1 halftone, 2 hatching
  };
  std::vector<Cell> cells(static_cast<std::size_t>(rng.integer(8, 14)));
  for (auto& c : cells) {
    c = {rng.uniform(0.0, width), rng.uniform(0.0, height), rng.integer(0, palette_size - 1),
         rng.integer(0, 2)};
  }
  const double dot_pitch = rng.uniform(5.0, 8.0);
  const double hatch_pitch = rng.uniform(4.0, 7.0);
  const double outline = rng.uniform(1.0, 2.5);

  std::vector<float> px(static_cast<std::size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double d1 = 1e300, d2 = 1e300;
      std::size_t nearest = 0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const double d = std::hypot(x - cells[i].x, y - cells[i].y);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          nearest = i;
        } else if (d < d2) {
          d2 = d;
        }
      }
      const Cell& cell = cells[nearest];
      std::array<double, 3> c = palette[static_cast<std::size_t>(cell.color)];
      if (cell.pattern == 1) {
        const double u = std::fmod(x, dot_pitch) - dot_pitch / 2;
        const double v = std::fmod(y, dot_pitch) - dot_pitch / 2;
        const double r = dot_pitch * 0.3;
        if (u * u + v * v < r * r) {
          for (double& k : c) k *= 0.35;
        }
      } else if (cell.pattern == 2) {
        if (std::fmod(x + y, hatch_pitch) < 1.5) {
          for (double& k : c) k = 0.15 + 0.5 * k;
        }
      }
      // Dark outline along cell borders, where the two nearest seeds are equidistant.
      const double edge = smoothstep(outline, outline + 1.0, 0.5 * (d2 - d1));
      for (int k = 0; k < 3; ++k) {
        px[(static_cast<std::size_t>(y) * width + x) * 3 + k] =
            static_cast<float>(0.05 + (c[k] - 0.05) * edge);
      }
    }
  }
  return Image(height, width, std::move(px));
}

}  // namespace nst
