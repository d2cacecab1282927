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

#include "nst/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "nst/error.hpp"
#include "nst/image_io.hpp"
#include "nst/vgg.hpp"

namespace nst {
namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Image to_metric_size(const Image& img) {
  const Size2 work = working_size({img.width(), img.height()});
  return resize_bilinear(img, work.width, work.height);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first error.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp<long>(jobs, 1, static_cast<long>(std::max<std::size_t>(n, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct PairScores {
  double style_ssim = 0.0;
  double content_ssim = 0.0;
  double style_loss = 0.0;
  double content_loss = 0.0;
};

}  // namespace

NamedStylizer make_stylizer(const MethodConfig& cfg, const WeightStore& weights) {
  cfg.validate();
  return {std::string(method_name(cfg.method)),
          [cfg, &weights](const Image& content, const Image& style) {
            return stylize(content, style, cfg, weights);
          }};
}

NamedStylizer identity_stylizer() {
  return {"identity", [](const Image& content, const Image&) { return content; }};
}

double LossMetric::style_distance(const Image& result, const Image& style,
                                  const WeightStore& vgg) const {
  const Image r = to_metric_size(result);
  const Image s = resize_bilinear(style, r.width(), r.height());
  const EncoderLevel top(static_cast<int>(weights.layer_weights.size()));
  const auto fr = encode_pyramid(r, top, vgg);
  const auto fs = encode_pyramid(s, top, vgg);
  std::vector<double> layer_losses;
  for (std::size_t l = 0; l < fr.size(); ++l) {
    const FeatureMatrix mr = to_matrix(fr[l]);
    const FeatureMatrix ms = to_matrix(fs[l]);
    layer_losses.push_back(style_layer_loss(gram(mr), gram(ms), mr.rows(), mr.cols()));
  }
  return style_loss(std::span<const double>(layer_losses), weights);
}

double LossMetric::content_distance(const Image& result, const Image& content,
                                    const WeightStore& vgg) const {
  const Image r = to_metric_size(result);
  const Image c = resize_bilinear(content, r.width(), r.height());
  const EncoderLevel level(content_level);
  return nst::content_loss(encode(r, level, vgg).features, encode(c, level, vgg).features);
}

EvalReport evaluate_corpus(std::span<const NamedStylizer> stylizers,
                           std::span<const NamedImage> contents, std::span<const NamedImage> styles,
                           const WeightStore& vgg, const EvalOptions& opts) {
  if (stylizers.empty()) throw ArgumentError("evaluate_corpus: no methods given");
  if (contents.empty() || styles.empty()) throw ArgumentError("evaluate_corpus: empty corpus");
  opts.ssim.validate();
  opts.loss.weights.validate();

  EvalReport report;
  report.timestamp = utc_timestamp();
  for (const auto& c : contents) report.content_ids.push_back(c.id);
  for (const auto& s : styles) report.style_ids.push_back(s.id);

  const std::size_t pairs = contents.size() * styles.size();
  for (const auto& stylizer : stylizers) {
    std::vector<PairScores> scores(pairs);
    parallel_for(pairs, opts.jobs, [&](std::size_t i) {
      const Image& content = contents[i / styles.size()].image;
      const Image& style_full = styles[i % styles.size()].image;
      const Image style = resize_bilinear(style_full, content.width(), content.height());
      Image out = stylizer.run(content, style);
      if (out.width() != content.width() || out.height() != content.height()) {
        out = resize_bilinear(out, content.width(), content.height());
      }
      PairScores& s = scores[i];
      s.style_ssim = ssim(out, style, opts.ssim);
      s.content_ssim = ssim(out, content, opts.ssim);
      s.style_loss = opts.loss.style_distance(out, style, vgg);
      s.content_loss = opts.loss.content_distance(out, content, vgg);
    });
    EvalRow row;
    row.method = stylizer.name;
    row.n_pairs = static_cast<int>(pairs);
    for (const auto& s : scores) {
      row.style_ssim_mean += s.style_ssim;
      row.content_ssim_mean += s.content_ssim;
      row.style_loss_mean += s.style_loss;
      row.content_loss_mean += s.content_loss;
    }
    const auto n = static_cast<double>(pairs);
    row.style_ssim_mean /= n;
    row.content_ssim_mean /= n;
    row.style_loss_mean /= n;
    row.content_loss_mean /= n;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_eval_csv(std::ostream& os, const EvalReport& report) {
  os << kEvalCsvHeader << '\n';
  os << std::setprecision(9);
  for (const auto& r : report.rows) {
    os << r.method << ',' << r.style_ssim_mean << ',' << r.content_ssim_mean << ','
       << r.style_loss_mean << ',' << r.content_loss_mean << ',' << r.n_pairs << '\n';
  }
}

void write_eval_text(std::ostream& os, const EvalReport& report) {
  os << "corpus: " << report.content_ids.size() << " content x " << report.style_ids.size()
     << " style images, evaluated " << report.timestamp << '\n';
  os << std::left << std::setw(12) << "method" << std::right << std::setw(12) << "SSIM style"
     << std::setw(14) << "SSIM content" << std::setw(14) << "style loss" << std::setw(14)
     << "content loss" << std::setw(8) << "pairs" << '\n';
  for (const auto& r : report.rows) {
    std::string label = r.method;
    try {
      label = std::string(method_label(parse_method(r.method)));
    } catch (const ArgumentError&) {
    }
    os << std::left << std::setw(12) << label << std::right << std::fixed << std::setprecision(6)
       << std::setw(12) << r.style_ssim_mean << std::setw(14) << r.content_ssim_mean
       << std::scientific << std::setprecision(4) << std::setw(14) << r.style_loss_mean
       << std::setw(14) << r.content_loss_mean << std::defaultfloat << std::setw(8) << r.n_pairs
       << '\n';
  }
}

BenchEntry benchmark(const NamedStylizer& stylizer, std::span<const ImagePair> pairs, int reps) {
  if (reps < 1) throw ArgumentError("benchmark: reps must be >= 1");
  if (pairs.empty()) throw ArgumentError("benchmark: no input pairs");

  BenchEntry e;
  e.method = stylizer.name;
  e.reps = reps;
  e.width = pairs.front().content.width();
  e.height = pairs.front().content.height();

  // Warm-up, discarded.
  static_cast<void>(stylizer.run(pairs.front().content, pairs.front().style));

  e.samples_s.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    const ImagePair& p = pairs[static_cast<std::size_t>(i) % pairs.size()];
    const auto t0 = std::chrono::steady_clock::now();
    const Image out = stylizer.run(p.content, p.style);
    const auto t1 = std::chrono::steady_clock::now();
    ++e.timed_calls;
    static_cast<void>(out);
    e.samples_s.push_back(std::chrono::duration<double>(t1 - t0).count());
  }

  double sum = 0.0;
  for (double s : e.samples_s) sum += s;
  e.mean_s = sum / reps;
  std::vector<double> sorted = e.samples_s;
  std::sort(sorted.begin(), sorted.end());
  const auto mid = sorted.size() / 2;
  e.median_s = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (reps > 1) {
    double sq = 0.0;
    for (double s : e.samples_s) sq += (s - e.mean_s) * (s - e.mean_s);
    e.std_s = std::sqrt(sq / (reps - 1));
  }
  return e;
}

void write_bench_csv(std::ostream& os, const BenchReport& report) {
  os << kBenchCsvHeader << '\n';
  os << std::setprecision(9);
  for (const auto& e : report.entries) {
    os << e.method << ',' << e.mean_s << ',' << e.median_s << ',' << e.std_s << ',' << e.reps << ','
       << e.width << ',' << e.height << '\n';
  }
}

void write_bench_text(std::ostream& os, const BenchReport& report) {
  os << std::left << std::setw(12) << "method" << std::right << std::setw(11) << "mean s"
     << std::setw(11) << "median s" << std::setw(11) << "std s" << std::setw(7) << "reps"
     << std::setw(11) << "size" << '\n';
  for (const auto& e : report.entries) {
    std::string label = e.method;
    try {
      label = std::string(method_label(parse_method(e.method)));
    } catch (const ArgumentError&) {
    }
    os << std::left << std::setw(12) << label << std::right << std::fixed << std::setprecision(4)
       << std::setw(11) << e.mean_s << std::setw(11) << e.median_s << std::setw(11) << e.std_s
       << std::defaultfloat << std::setw(7) << e.reps << std::setw(11)
       << (std::to_string(e.width) + "x" + std::to_string(e.height)) << '\n';
  }
}

}  // namespace nst
