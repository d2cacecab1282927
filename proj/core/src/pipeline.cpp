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

#include "nst/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "nst/error.hpp"
#include "nst/image_io.hpp"
#include "nst/transforms.hpp"

namespace nst {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void check_levels(std::span<const int> levels) {
  if (levels.empty()) throw ArgumentError("level list is empty");
  for (int l : levels) static_cast<void>(EncoderLevel(l));
}

FeatureMatrix stage_transform(TransformKind kind, const FeatureMatrix& content,
                              const FeatureMatrix& style, int height, int width, int style_height,
                              int style_width) {
  if (kind == TransformKind::kAdain) {
    FeatureMap c = from_matrix(content, height, width);
    FeatureMap s = from_matrix(style, style_height, style_width);
    return to_matrix(adain(c, s));
  }
  FeatureMatrix whitened;
  try {
    whitened = whiten(content);
  } catch (const DegenerateInputError&) {
    // Flat content: the whitened signal is identically zero and coloring
    // reduces to the style mean.
    whitened = FeatureMatrix(content.rows(), content.cols());
  }
  return color(whitened, style);
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kAdain: return "adain";
    case Method::kUstAdain: return "ust-adain";
    case Method::kUstWct: return "ust-wct";
    case Method::kUstWct4: return "ust-wct4";
    case Method::kPhotoR: return "photo-r";
  }
  return "unknown";
}

std::string_view method_label(Method m) {
  switch (m) {
    case Method::kAdain: return "AdaIN";
    case Method::kUstAdain: return "UST-AdaIN";
    case Method::kUstWct: return "UST-WCT";
    case Method::kUstWct4: return "UST-WCT4";
    case Method::kPhotoR: return "PHOTO-R";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  const std::string t = lower(text);
  for (Method m : kAllMethods) {
    if (t == method_name(m) || t == lower(method_label(m))) return m;
  }
  throw ArgumentError("unknown method '" + std::string(text) +
                      "' (expected adain, ust-adain, ust-wct, ust-wct4 or photo-r)");
}

TransformKind transform_of(Method m) {
  return (m == Method::kAdain || m == Method::kUstAdain) ? TransformKind::kAdain : TransformKind::kWct;
}

DecoderKind decoder_of(Method m) {
  switch (m) {
    case Method::kAdain: return adain_decoder();
    case Method::kPhotoR: return unpooling_decoder();
    default: return reconstruction_decoder();
  }
}

std::vector<int> default_levels(Method m) {
  switch (m) {
    case Method::kAdain: return {4};
    case Method::kUstAdain:
    case Method::kUstWct: return {5, 4, 3, 2, 1};
    case Method::kUstWct4:
    case Method::kPhotoR: return {4, 3, 2, 1};
  }
  return {};
}

MethodConfig MethodConfig::defaults(Method m) {
  MethodConfig cfg;
  cfg.method = m;
  cfg.alpha = transform_of(m) == TransformKind::kAdain ? 1.0 : 0.6;
  cfg.levels = default_levels(m);
  return cfg;
}

void MethodConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  if (output_size.width < 1 || output_size.height < 1) {
    throw ArgumentError("output size must be positive");
  }
  check_levels(levels);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] >= levels[i - 1]) throw ArgumentError("levels must be strictly decreasing");
  }
}

int PipelineProbe::total_content_encodes() const noexcept {
  int n = 0;
  for (int v : content_encodes) n += v;
  return n;
}

Image stylize_multilevel(const Image& content, const Image& style, std::span<const int> levels,
                         TransformKind transform, double alpha, const WeightStore& weights,
                         const DecoderKind& decoder, PipelineProbe* probe) {
  check_levels(levels);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  const int top = *std::max_element(levels.begin(), levels.end());
  const int div = 1 << (top - 1);
  if (content.height() % div != 0 || content.width() % div != 0) {
    throw ShapeError("content size " + std::to_string(content.width()) + "x" +
                     std::to_string(content.height()) + " is not divisible by " + std::to_string(div));
  }
  const Image style_resized = resize_bilinear(style, content.width(), content.height());

  Image current = content;
  for (int l : levels) {
    const EncoderLevel level(l);
    Encoded c = encode(current, level, weights);
    Encoded s = encode(style_resized, level, weights);
    if (probe) {
      ++probe->content_encodes[static_cast<std::size_t>(l)];
      ++probe->style_encodes[static_cast<std::size_t>(l)];
    }
    const int h = c.features.height();
    const int w = c.features.width();
    const int sh = s.features.height();
    const int sw = s.features.width();
    const FeatureMatrix fc = to_matrix(std::move(c.features));
    const FeatureMatrix fs = to_matrix(std::move(s.features));
    const FeatureMatrix transformed = stage_transform(transform, fc, fs, h, w, sh, sw);
    if (probe && probe->on_stage) probe->on_stage(StageView{l, transform, fc, fs, transformed});
    FeatureMap blended = from_matrix(wct_blend(fc, transformed, alpha), h, w);
    current = decode(blended, level, weights, decoder, &c.indices);
    if (probe) ++probe->decodes;
  }
  return current;
}

Image photo_r(const Image& content, const Image& style, double alpha, const WeightStore& weights,
              PipelineProbe* probe, const GuidedFilterParams& smoothing) {
  const auto levels = default_levels(Method::kPhotoR);
  const Image f1 = stylize_multilevel(content, style, levels, TransformKind::kWct, alpha, weights,
                                      unpooling_decoder(), probe);
  if (probe) ++probe->smooth_passes;
  return smooth(f1, content, smoothing);
}

Size2 working_size(Size2 output) {
  auto round16 = [](int v) { return std::max(16, static_cast<int>(std::lround(v / 16.0)) * 16); };
  return {round16(output.width), round16(output.height)};
}

Image stylize(const Image& content, const Image& style, const MethodConfig& cfg,
              const WeightStore& weights, PipelineProbe* probe) {
  cfg.validate();
  if (content.empty() || style.empty()) throw ArgumentError("stylize: empty input image");
  const Size2 work = working_size(cfg.output_size);
  const Image c = resize_bilinear(content, work.width, work.height);
  const Image s = resize_bilinear(style, work.width, work.height);

  Image out;
  if (cfg.method == Method::kPhotoR) {
    const Image f1 = stylize_multilevel(c, s, cfg.levels, TransformKind::kWct, cfg.alpha, weights,
                                        unpooling_decoder(), probe);
    if (probe) ++probe->smooth_passes;
    out = smooth(f1, c);
  } else {
    out = stylize_multilevel(c, s, cfg.levels, transform_of(cfg.method), cfg.alpha, weights,
                             decoder_of(cfg.method), probe);
  }
  return resize_bilinear(out, cfg.output_size.width, cfg.output_size.height);
}

std::vector<TensorSpec> method_manifest(const Architecture& arch, Method m,
                                        std::span<const int> levels) {
  check_levels(levels);
  const int top = *std::max_element(levels.begin(), levels.end());
  std::vector<TensorSpec> specs = encoder_manifest(arch, EncoderLevel(top));
  const DecoderKind kind = decoder_of(m);
  for (int l : levels) {
    auto d = decoder_manifest(arch, kind, EncoderLevel(l));
    specs.insert(specs.end(), d.begin(), d.end());
  }
  return specs;
}

}  // namespace nst
