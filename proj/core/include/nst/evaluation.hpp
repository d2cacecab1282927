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

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nst/pipeline.hpp"
#include "nst/ssim.hpp"
#include "nst/tensor.hpp"
#include "nst/transforms.hpp"
#include "nst/weights.hpp"

namespace nst {

/// A stylization routine under evaluation. Must be safe to call concurrently.
struct NamedStylizer {
  std::string name;
  std::function<Image(const Image& content, const Image& style)> run;
};

NamedStylizer make_stylizer(const MethodConfig& cfg, const WeightStore& weights);
/// Debug stylizer that returns the content image unchanged.
NamedStylizer identity_stylizer();

struct NamedImage {
  std::string id;
  Image image;
};

/// Loss-based distances between a result and its inputs, measured with the
/// VGG encoder of a weight store.
struct LossMetric {
  StyleLossWeights weights = StyleLossWeights::uniform(kMaxLevel);
  /// relu{content_level}_1 carries the content representation.
  int content_level = 4;

  /// 0.5 * sum_l omega_l E_l over relu1_1 .. relu5_1 Gram matrices.
  double style_distance(const Image& result, const Image& style, const WeightStore& vgg) const;
  double content_distance(const Image& result, const Image& content, const WeightStore& vgg) const;
};

struct EvalOptions {
  int jobs = 1;
  SsimParams ssim{};
  LossMetric loss{};
};

struct EvalRow {
  std::string method;
  double style_ssim_mean = 0.0;
  double content_ssim_mean = 0.0;
  double style_loss_mean = 0.0;
  double content_loss_mean = 0.0;
  int n_pairs = 0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<std::string> content_ids;
  std::vector<std::string> style_ids;
  /// UTC, ISO 8601.
  std::string timestamp;
};

/// Stylizes every (content, style) combination with every stylizer and
/// averages SSIM and loss distances to the content and style images. Results
/// are compared at the content image's size. Throws ArgumentError on an empty
/// corpus.
EvalReport evaluate_corpus(std::span<const NamedStylizer> stylizers,
                           std::span<const NamedImage> contents, std::span<const NamedImage> styles,
                           const WeightStore& vgg, const EvalOptions& opts = {});

inline constexpr const char* kEvalCsvHeader =
    "method,style_ssim_mean,content_ssim_mean,style_loss_mean,content_loss_mean,n_pairs";
void write_eval_csv(std::ostream& os, const EvalReport& report);
void write_eval_text(std::ostream& os, const EvalReport& report);

struct BenchEntry {
  std::string method;
  double mean_s = 0.0;
  double median_s = 0.0;
  /// Sample standard deviation; 0 for a single repetition.
  double std_s = 0.0;
  int reps = 0;
  int width = 0;
  int height = 0;
  /// Calls made inside the timed loop.
  int timed_calls = 0;
  std::vector<double> samples_s;
};

struct BenchReport {
  std::vector<BenchEntry> entries;
};

struct ImagePair {
  Image content;
  Image style;
};

/// Wall-clock timing of `reps` stylizer calls cycling through `pairs`, after
/// one discarded warm-up call. Only the stylizer call is inside the timer.
BenchEntry benchmark(const NamedStylizer& stylizer, std::span<const ImagePair> pairs, int reps);

inline constexpr const char* kBenchCsvHeader = "method,mean_s,median_s,std_s,reps,width,height";
void write_bench_csv(std::ostream& os, const BenchReport& report);
void write_bench_text(std::ostream& os, const BenchReport& report);

}  // namespace nst
