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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Set NST_WEIGHTS to a converted weight
// file to repeat the weight-dependent checks with it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "nst/error.hpp"
#include "nst/evaluation.hpp"
#include "nst/image_io.hpp"
#include "nst/layers.hpp"
#include "nst/linalg.hpp"
#include "nst/pipeline.hpp"
#include "nst/ssim.hpp"
#include "nst/synthetic.hpp"
#include "nst/transforms.hpp"
#include "nst/weights.hpp"
#include "oracles.hpp"

namespace {

using namespace nst;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int g_failures = 0;

void report(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++g_failures;
  std::printf("%s  %-34s %s(%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.str().c_str(), dt);
  std::fflush(stdout);
}

void skip(const std::string& name, const std::string& why) {
  std::printf("SKIP  %-34s %s\n", name.c_str(), why.c_str());
}

double seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Matrix to_eigen(const std::vector<std::vector<double>>& m) {
  Matrix out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  }
  return out;
}

// ---------------------------------------------------------------------------

void transform_suite(Outcome& o) {
  std::mt19937 rng(11);
  double adain_err = 0.0, white_err = 0.0, color_err = 0.0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 5; ++trial) {
    const FeatureMap c = oracle::random_map(64, 32, 32, rng, 0.0f, 2.0f);
    const FeatureMap s = oracle::random_map(64, 32, 32, rng, -1.0f, 5.0f);
    const FeatureMap a = adain(c, s);
    for (int ch = 0; ch < 64; ++ch) {
      const auto [mo, vo] = oracle::stats(a.channel(ch));
      const auto [ms, vs] = oracle::stats(s.channel(ch));
      adain_err = std::max({adain_err, rel(mo, ms), rel(vo, vs)});
    }
    const FeatureMatrix fc = to_matrix(c);
    const FeatureMatrix fs = to_matrix(s);
    const WctIntermediates r = wct(fc, fs);
    const Matrix wc = to_eigen(oracle::covariance(r.whitened));
    white_err = std::max(white_err, (wc - Matrix::Identity(64, 64)).cwiseAbs().maxCoeff());
    const Matrix cc = to_eigen(oracle::covariance(r.colored));
    const Matrix sc = to_eigen(oracle::covariance(fs));
    color_err = std::max(color_err, (cc - sc).norm() / sc.norm());
  }
  const double dt = seconds(t0);
  o.detail << "adain rel " << adain_err << ", whitened |C-I| " << white_err << ", colored rel "
           << color_err << ", " << dt << " s; ";
  o.require(adain_err < 1e-4, "AdaIN statistics within 1e-4");
  o.require(white_err < 1e-4, "whitened covariance within 1e-4 of identity");
  o.require(color_err < 1e-3, "colored covariance within 1e-3");
  o.require(dt < 10.0, "under 10 s");
}

void loss_suite(Outcome& o) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> channels(1, 16);
  std::uniform_int_distribution<int> side(1, 12);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = channels(rng);
    const int h = side(rng);
    const int w = side(rng);
    const FeatureMap f = oracle::random_map(n, h, w, rng);
    const FeatureMap p = oracle::random_map(n, h, w, rng);
    worst = std::max(worst, rel(content_loss(f, p), oracle::content_loss(f, p)));

    const FeatureMatrix mf = to_matrix(f);
    const FeatureMatrix mp = to_matrix(p);
    const auto gf = oracle::gram(mf);
    const auto gp = oracle::gram(mp);
    const Matrix g = gram(mf);
    worst = std::max(worst, (g - to_eigen(gf)).norm() / to_eigen(gf).norm());
    const double e = style_layer_loss(g, gram(mp), n, static_cast<long>(h) * w);
    const double e_want = oracle::style_layer_loss(gf, gp, n, static_cast<double>(h) * w);
    worst = std::max(worst, rel(e, e_want));

    StyleLossWeights sw;
    sw.layer_weights = {0.5, 1.5, 2.0};
    sw.content_weight = 0.7;
    sw.style_weight = 3.0;
    const std::vector<double> layer{e_want, 2.0 * e_want, 0.25};
    const double ls = style_loss(layer, sw);
    const double ls_want = 0.5 * (0.5 * layer[0] + 1.5 * layer[1] + 2.0 * layer[2]);
    worst = std::max(worst, rel(ls, ls_want));
    worst = std::max(worst, rel(total_loss(1.25, ls, sw), 0.7 * 1.25 + 3.0 * ls_want));
  }

  double hand = 0.0;
  const FeatureMap two(1, 1, 1, {2.0f});
  const FeatureMap zero(1, 1, 1, {0.0f});
  hand = std::max(hand, std::abs(content_loss(two, zero) - 2.0));
  hand = std::max(hand, std::abs(content_loss(two, two)));
  Matrix g2(1, 1);
  g2(0, 0) = 2.0;
  const Matrix g0 = Matrix::Zero(1, 1);
  hand = std::max(hand, std::abs(style_layer_loss(g2, g0, 1, 1) - 1.0));
  hand = std::max(hand, std::abs(style_layer_loss(g2, g2, 1, 1)));
  StyleLossWeights one;
  one.layer_weights = {2.0};
  const std::vector<double> three{3.0};
  hand = std::max(hand, std::abs(style_loss(three, one) - 3.0));
  const std::vector<double> nothing{0.0};
  hand = std::max(hand, std::abs(style_loss(nothing, one)));
  StyleLossWeights ab;
  ab.layer_weights = {1.0};
  ab.content_weight = 2.0;
  ab.style_weight = 3.0;
  hand = std::max(hand, std::abs(total_loss(1.0, 1.0, ab) - 5.0));
  const Matrix gones = gram(FeatureMatrix(2, 2, {1.0f, 1.0f, 1.0f, 1.0f}));
  hand = std::max(hand, (gones - Matrix::Constant(2, 2, 2.0)).cwiseAbs().maxCoeff());

  o.detail << "worst rel " << worst << ", hand cases " << hand << "; ";
  o.require(worst < 1e-6, "oracle agreement within 1e-6");
  o.require(hand < 1e-9, "hand cases within 1e-9");
}

void conv_suite(Outcome& o) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> ch(1, 8);
  std::uniform_int_distribution<int> side(2, 16);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int in_c = ch(rng);
    const int out_c = ch(rng);
    const int k = trial % 5 == 4 ? 1 : 3;
    const int h = side(rng);
    const int w = side(rng);
    const FeatureMap x = oracle::random_map(in_c, h, w, rng);
    const Tensor kernel{{static_cast<std::uint32_t>(out_c), static_cast<std::uint32_t>(in_c),
                         static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k)},
                        oracle::random_values(static_cast<std::size_t>(out_c) * in_c * k * k, rng)};
    const Tensor bias{{static_cast<std::uint32_t>(out_c)},
                      oracle::random_values(static_cast<std::size_t>(out_c), rng)};
    const FeatureMap got = conv2d(x, kernel, bias);
    const std::vector<double> want = oracle::conv2d(x, kernel, bias);
    for (std::size_t i = 0; i < want.size(); ++i) {
      worst = std::max(worst, std::abs(static_cast<double>(got.data()[i]) - want[i]));
    }
  }
  o.detail << "max abs " << worst << " over 50 shapes; ";
  o.require(worst < 1e-5, "max abs difference below 1e-5");
}

void eig_suite(Outcome& o) {
  std::mt19937 rng(14);
  std::uniform_int_distribution<int> size(1, 64);
  std::normal_distribution<double> normal;
  double residual = 0.0, ortho = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial == 0 ? 64 : size(rng);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
    }
    const Matrix s = trial % 2 == 0 ? Matrix(a + a.transpose()) : Matrix(a * a.transpose());
    const SymEig e = sym_eig(s);
    const Matrix back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    residual = std::max(residual, (back - s).norm() / s.norm());
    ortho = std::max(ortho, (e.vectors.transpose() * e.vectors - Matrix::Identity(n, n))
                                .cwiseAbs()
                                .maxCoeff());
  }
  o.detail << "residual " << residual << ", orthonormality " << ortho << "; ";
  o.require(residual < 1e-4, "relative residual below 1e-4");
  o.require(ortho < 1e-5, "orthonormality below 1e-5");
}

void ssim_suite(Outcome& o) {
  std::mt19937 rng(15);
  double self = 0.0, vs_oracle = 0.0, asym = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Image a = oracle::random_image(16, 16, rng);
    const Image b = oracle::random_image(16, 16, rng);
    self = std::max(self, std::abs(ssim(a, a) - 1.0));
    vs_oracle = std::max(vs_oracle, std::abs(ssim(a, b) - oracle::ssim(oracle::luma(a), oracle::luma(b), 16, 16)));
    asym = std::max(asym, std::abs(ssim(a, b) - ssim(b, a)));
  }
  const Image flat(16, 16, std::vector<float>(16 * 16 * 3, 0.25f));
  const Image brighter(16, 16, std::vector<float>(16 * 16 * 3, 0.75f));
  const double shifted = ssim(flat, brighter);
  vs_oracle = std::max(vs_oracle, std::abs(shifted - oracle::ssim(oracle::luma(flat), oracle::luma(brighter), 16, 16)));
  const Image big_a = make_content_image(96, 80, 3);
  const Image big_b = make_style_image(96, 80, 3);
  self = std::max(self, std::abs(ssim(big_a, big_a) - 1.0));
  asym = std::max(asym, std::abs(ssim(big_a, big_b) - ssim(big_b, big_a)));
  o.detail << "|ssim(x,x)-1| " << self << ", vs oracle " << vs_oracle << ", asymmetry " << asym
           << "; ";
  o.require(self < 1e-9, "identity within 1e-9");
  o.require(vs_oracle < 1e-6, "oracle within 1e-6");
  o.require(shifted < 1.0, "shifted constant below 1");
  o.require(asym < 1e-12, "symmetry within 1e-12");
}

void weight_format_suite(Outcome& o) {
  const WeightStore w = make_synthetic_weights();
  const std::vector<std::byte> bytes = serialize_weights(w);
  const WeightStore back = parse_weights(bytes);
  bool exact = back.size() == w.size();
  for (const auto& [name, t] : w.tensors()) {
    if (!back.contains(name)) {
      exact = false;
      continue;
    }
    const Tensor& u = back.at(name);
    exact = exact && u.shape == t.shape && u.values.size() == t.values.size() &&
            std::memcmp(u.values.data(), t.values.data(), t.values.size() * sizeof(float)) == 0;
  }
  const auto path = std::filesystem::temp_directory_path() /
                    ("nst_acceptance_" + std::to_string(::getpid()) + ".nstw");
  save_weights(path, w);
  const WeightStore from_file = load_weights(path);
  std::filesystem::remove(path);
  exact = exact && from_file == w && serialize_weights(from_file) == bytes;

  const auto kind_of = [](std::vector<std::byte> b) {
    try {
      parse_weights(b);
    } catch (const FormatError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  std::vector<std::byte> bad_magic = bytes;
  bad_magic[0] = std::byte{'X'};
  std::vector<std::byte> truncated(bytes.begin(), bytes.end() - 7);
  const int magic_kind = kind_of(bad_magic);
  const int trunc_kind = kind_of(truncated);
  o.detail << w.size() << " tensors, " << bytes.size() << " bytes; ";
  o.require(exact, "bit-exact round trip");
  o.require(magic_kind == static_cast<int>(FormatError::Kind::kBadMagic), "bad magic rejected");
  o.require(trunc_kind == static_cast<int>(FormatError::Kind::kTruncated), "truncation rejected");
  o.require(magic_kind != trunc_kind, "distinct errors");
}

// ---------------------------------------------------------------------------

constexpr int kPairs = 5;
constexpr Size2 kDeskSize{600, 450};

struct Corpus {
  std::vector<Image> contents;
  std::vector<Image> styles;
};

Corpus desk_corpus() {
  Corpus c;
  for (int i = 0; i < kPairs; ++i) {
    c.contents.push_back(make_content_image(kDeskSize.width, kDeskSize.height, static_cast<std::uint64_t>(i)));
    c.styles.push_back(make_style_image(kDeskSize.width, kDeskSize.height, static_cast<std::uint64_t>(100 + i)));
  }
  return c;
}

bool finite_in_range(const Image& img) {
  return std::all_of(img.data().begin(), img.data().end(),
                     [](float v) { return std::isfinite(v) && v >= 0.0f && v <= 1.0f; });
}

/// Mean content SSIM per method, filled by the corpus run.
using ContentScores = std::map<Method, double>;

void pipeline_contracts(Outcome& o, const WeightStore& w, const Corpus& corpus,
                        ContentScores& scores) {
  double worst_zero = 1.0;
  for (Method m : kAllMethods) {
    MethodConfig cfg = MethodConfig::defaults(m);
    cfg.alpha = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Image& content = corpus.contents[static_cast<std::size_t>(i)];
      const double s = ssim(stylize(content, corpus.styles[static_cast<std::size_t>(i)], cfg, w), content);
      worst_zero = std::min(worst_zero, s);
    }
  }
  o.detail << "alpha=0 min content SSIM " << worst_zero << "; ";
  o.require(worst_zero > 0.8, "alpha=0 content SSIM above 0.8");

  PipelineProbe probe;
  const std::vector<int> levels{4, 3, 2, 1};
  const Image small_c = resize_bilinear(corpus.contents[0], 128, 96);
  const Image small_s = resize_bilinear(corpus.styles[0], 128, 96);
  stylize_multilevel(small_c, small_s, levels, TransformKind::kWct, 0.6, w,
                     reconstruction_decoder(), &probe);
  o.detail << "[4,3,2,1] ran " << probe.total_content_encodes() << " encodes/" << probe.decodes
           << " decodes; ";
  o.require(probe.total_content_encodes() == 4 && probe.decodes == 4, "exactly 4 passes");

  bool ok = true;
  const auto t0 = Clock::now();
  for (Method m : kAllMethods) {
    const MethodConfig cfg = MethodConfig::defaults(m);
    double sum = 0.0;
    for (int i = 0; i < kPairs; ++i) {
      const Image& content = corpus.contents[static_cast<std::size_t>(i)];
      const Image out = stylize(content, corpus.styles[static_cast<std::size_t>(i)], cfg, w);
      ok = ok && finite_in_range(out) && out.width() == 600 && out.height() == 450;
      sum += ssim(out, content);
    }
    scores[m] = sum / kPairs;
  }
  const double dt = seconds(t0);
  o.detail << "5 methods x " << kPairs << " pairs in " << dt << " s; ";
  o.require(ok, "finite in-range 600x450 outputs");
  o.require(dt < 60.0, "corpus run under 60 s");
}

void content_ordering(Outcome& o, const ContentScores& s) {
  o.detail << "mean content SSIM:";
  for (Method m : kAllMethods) o.detail << " " << method_label(m) << " " << s.at(m);
  o.detail << "; ";
  for (Method m : {Method::kUstAdain, Method::kUstWct, Method::kUstWct4}) {
    o.require(s.at(Method::kPhotoR) > s.at(m),
              std::string("PHOTO-R above ") + std::string(method_label(m)));
  }
  o.require(s.at(Method::kUstWct4) > s.at(Method::kUstWct), "UST-WCT4 above UST-WCT");
}

void runtime_ordering(Outcome& o, const WeightStore& w, const Corpus& corpus) {
  constexpr int kReps = 20;
  std::vector<ImagePair> pairs;
  for (int i = 0; i < kPairs; ++i) {
    pairs.push_back({corpus.contents[static_cast<std::size_t>(i)], corpus.styles[static_cast<std::size_t>(i)]});
  }
  std::map<Method, double> mean;
  for (Method m : {Method::kAdain, Method::kUstAdain, Method::kUstWct, Method::kUstWct4}) {
    const BenchEntry e = benchmark(make_stylizer(MethodConfig::defaults(m), w), pairs, kReps);
    mean[m] = e.mean_s;
    o.detail << method_label(m) << " " << e.mean_s << " s, ";
  }
  o.detail << "mean of " << kReps << " reps at 600x450; ";
  o.require(mean[Method::kAdain] < mean[Method::kUstAdain], "AdaIN faster than UST-AdaIN");
  o.require(mean[Method::kUstAdain] < mean[Method::kUstWct], "UST-AdaIN faster than UST-WCT");
  o.require(mean[Method::kUstWct4] < mean[Method::kUstWct], "UST-WCT4 faster than UST-WCT");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  report("transform correctness", transform_suite);
  report("loss oracles", loss_suite);
  report("convolution oracle", conv_suite);
  report("symmetric eigensolver", eig_suite);
  report("SSIM", ssim_suite);
  report("weight format", weight_format_suite);

  const Corpus corpus = desk_corpus();
  const WeightStore synthetic = make_synthetic_weights();
  ContentScores scores;
  bool ran = false;
  report("pipeline contracts (synthetic)", [&](Outcome& o) {
    pipeline_contracts(o, synthetic, corpus, scores);
    ran = true;
  });
  report("content-SSIM ordering (synthetic)", [&](Outcome& o) {
    o.require(ran, "corpus run completed");
    if (ran) content_ordering(o, scores);
  });
  report("runtime ordering (synthetic)", [&](Outcome& o) { runtime_ordering(o, synthetic, corpus); });

  const char* env = std::getenv("NST_WEIGHTS");
  if (env == nullptr || *env == '\0') {
    skip("pipeline contracts (converted)", "NST_WEIGHTS not set");
    skip("content-SSIM ordering (converted)", "NST_WEIGHTS not set");
  } else {
    ContentScores converted_scores;
    bool converted_ran = false;
    WeightStore converted;
    report("pipeline contracts (converted)", [&](Outcome& o) {
      converted = load_weights(env);
      pipeline_contracts(o, converted, corpus, converted_scores);
      converted_ran = true;
    });
    report("content-SSIM ordering (converted)", [&](Outcome& o) {
      o.require(converted_ran, "corpus run completed");
      if (converted_ran) content_ordering(o, converted_scores);
    });
  }

  std::printf("%s: %d criteria failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
