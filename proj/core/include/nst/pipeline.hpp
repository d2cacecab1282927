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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "nst/smooth.hpp"
#include "nst/tensor.hpp"
#include "nst/vgg.hpp"
#include "nst/weights.hpp"

namespace nst {

enum class Method { kAdain, kUstAdain, kUstWct, kUstWct4, kPhotoR };

inline constexpr std::array<Method, 5> kAllMethods{Method::kAdain, Method::kUstAdain, Method::kUstWct,
                                                   Method::kUstWct4, Method::kPhotoR};

/// Command-line spelling: adain, ust-adain, ust-wct, ust-wct4, photo-r.
std::string_view method_name(Method m);
/// Human-readable spelling: AdaIN, UST-AdaIN, UST-WCT, UST-WCT4, PHOTO-R.
std::string_view method_label(Method m);
/// Accepts either spelling, case-insensitively. Throws ArgumentError.
Method parse_method(std::string_view text);

enum class TransformKind { kWct, kAdain };

struct Size2 {
  int width = 600;
  int height = 450;

  friend bool operator==(const Size2&, const Size2&) = default;
};

struct MethodConfig {
  Method method = Method::kAdain;
  /// Style strength in [0, 1].
  double alpha = 1.0;
  Size2 output_size{};
  /// Cascade order; each entry in 1..5, strictly decreasing.
  std::vector<int> levels;

  /// Default settings: alpha 1.0 for the AdaIN variants and 0.6 for the
  /// WCT variants, 600x450 output, and the method's level schedule.
  static MethodConfig defaults(Method m);
  void validate() const;
};

TransformKind transform_of(Method m);
DecoderKind decoder_of(Method m);
std::vector<int> default_levels(Method m);

/// Features handed to PipelineProbe::on_stage after each transform.
struct StageView {
  int level;
  TransformKind kind;
  const FeatureMatrix& content;
  const FeatureMatrix& style;
  /// Transform output before alpha blending.
  const FeatureMatrix& transformed;
};

/// Optional instrumentation threaded through a stylization run.
struct PipelineProbe {
  std::array<int, kMaxLevel + 1> content_encodes{};
  std::array<int, kMaxLevel + 1> style_encodes{};
  int decodes = 0;
  int smooth_passes = 0;
  std::function<void(const StageView&)> on_stage;

  int total_content_encodes() const noexcept;
};

/// Encode -> transform -> blend -> decode for each level in order; the decoded
/// image becomes the next level's content. The style image is resized to the
/// content size and re-encoded from scratch at every level. Content sides must
/// be divisible by 2^(max level - 1).
Image stylize_multilevel(const Image& content, const Image& style, std::span<const int> levels,
                         TransformKind transform, double alpha, const WeightStore& weights,
                         const DecoderKind& decoder = reconstruction_decoder(),
                         PipelineProbe* probe = nullptr);

/// Photorealistic variant: four WCT levels with unpooling decoders, then
/// guided smoothing with the content image as guide.
Image photo_r(const Image& content, const Image& style, double alpha, const WeightStore& weights,
              PipelineProbe* probe = nullptr, const GuidedFilterParams& smoothing = {});

/// Working resolution used for a requested output size: each side rounded to
/// the nearest multiple of 16 (at least 16).
Size2 working_size(Size2 output);

/// Full method run: resizes both inputs to the working size, stylizes, and
/// resamples the result to cfg.output_size.
Image stylize(const Image& content, const Image& style, const MethodConfig& cfg,
              const WeightStore& weights, PipelineProbe* probe = nullptr);

/// Manifest of every tensor `m` needs for the given architecture.
std::vector<TensorSpec> method_manifest(const Architecture& arch, Method m,
                                        std::span<const int> levels);

}  // namespace nst
