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

#include "nst/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nst/error.hpp"

namespace nst {
namespace {

using RowMajorF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Variances below this are numerical noise in VGG activation units.
constexpr double kEigenAbsoluteFloor = 1e-12;

Matrix to_double(const FeatureMatrix& f) {
  return Eigen::Map<const RowMajorF>(f.data().data(), f.rows(), f.cols()).cast<double>();
}

FeatureMatrix to_features(const Matrix& m) {
  FeatureMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  Eigen::Map<RowMajorF>(out.data().data(), m.rows(), m.cols()) = m.cast<float>();
  return out;
}

// Returns the row means and centers `m` in place.
Vector center_rows(Matrix& m) {
  Vector mean = m.rowwise().mean();
  m.colwise() -= mean;
  return mean;
}

Matrix outer_self(const Matrix& f) {
  Matrix g = Matrix::Zero(f.rows(), f.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(f);
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

// E_r * diag(f(lambda_r)) * E_r^T over eigenvalues above the floor.
template <typename Fn>
Matrix spectral_map(const SymEig& eig, double floor_ratio, Fn&& fn, Eigen::Index* rank) {
  const double lambda_max = eig.values.size() ? eig.values[0] : 0.0;
  Eigen::Index r = 0;
  if (std::isfinite(lambda_max) && lambda_max > kEigenAbsoluteFloor) {
    const double floor = floor_ratio * lambda_max;
    while (r < eig.values.size() && eig.values[r] > floor) ++r;
  }
  if (rank) *rank = r;
  const auto n = eig.vectors.rows();
  if (r == 0) return Matrix::Zero(n, n);
  Vector d(r);
  for (Eigen::Index k = 0; k < r; ++k) d[k] = fn(eig.values[k]);
  const auto e = eig.vectors.leftCols(r);
  return e * d.asDiagonal() * e.transpose();
}

}  // namespace

Matrix gram(const FeatureMatrix& f) { return outer_self(to_double(f)); }

Matrix covariance(const FeatureMatrix& f) {
  if (f.cols() < 2) {
    throw DegenerateInputError("covariance needs at least 2 samples per row, got " +
                               std::to_string(f.cols()));
  }
  Matrix m = to_double(f);
  center_rows(m);
  return outer_self(m) / static_cast<double>(f.cols() - 1);
}

StyleLossWeights StyleLossWeights::uniform(int layers) {
  if (layers < 1) throw ArgumentError("style loss needs at least one layer");
  StyleLossWeights w;
  w.layer_weights.assign(static_cast<std::size_t>(layers), 1.0 / layers);
  return w;
}

void StyleLossWeights::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(content_weight) || !ok(style_weight)) {
    throw ArgumentError("content and style weights must be finite and non-negative");
  }
  bool any_positive = false;
  for (double w : layer_weights) {
    if (!ok(w)) throw ArgumentError("layer weights must be finite and non-negative");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw ArgumentError("at least one layer weight must be positive");
}

double content_loss(const FeatureMap& generated, const FeatureMap& target) {
  if (generated.channels() != target.channels() || generated.height() != target.height() ||
      generated.width() != target.width()) {
    throw ShapeError("content_loss: feature maps differ in shape");
  }
  const auto a = generated.data();
  const auto b = target.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return 0.5 * sum;
}

double style_layer_loss(const Matrix& generated_gram, const Matrix& target_gram, int maps,
                        long positions) {
  if (generated_gram.rows() != target_gram.rows() || generated_gram.cols() != target_gram.cols()) {
    throw ShapeError("style_layer_loss: Gram matrices differ in shape");
  }
  if (maps < 1 || positions < 1) throw ArgumentError("style_layer_loss: N and M must be positive");
  const double n = maps;
  const double m = static_cast<double>(positions);
  return (generated_gram - target_gram).squaredNorm() / (4.0 * n * n * m * m);
}

double style_loss(std::span<const double> layer_losses, const StyleLossWeights& weights) {
  weights.validate();
  if (layer_losses.size() != weights.layer_weights.size()) {
    throw ArgumentError("style_loss: " + std::to_string(layer_losses.size()) + " layers but " +
                        std::to_string(weights.layer_weights.size()) + " layer weights");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < layer_losses.size(); ++l) {
    sum += weights.layer_weights[l] * layer_losses[l];
  }
  return 0.5 * sum;
}

double style_loss(std::span<const StyleLayer> layers, const StyleLossWeights& weights) {
  std::vector<double> e;
  e.reserve(layers.size());
  for (const auto& l : layers) e.push_back(style_layer_loss(l.generated, l.target, l.maps, l.positions));
  return style_loss(std::span<const double>(e), weights);
}

double total_loss(double content, double style, const StyleLossWeights& weights) {
  weights.validate();
  return weights.content_weight * content + weights.style_weight * style;
}

FeatureMap adain(const FeatureMap& content, const FeatureMap& style, double epsilon) {
  if (content.channels() != style.channels()) {
    throw ShapeError("adain: content has " + std::to_string(content.channels()) +
                     " channels, style has " + std::to_string(style.channels()));
  }
  const auto cs = channel_stats(content);
  const auto ss = channel_stats(style);
  FeatureMap out(content.channels(), content.height(), content.width());
  for (int c = 0; c < content.channels(); ++c) {
    const auto& cst = cs[static_cast<std::size_t>(c)];
    const auto& sst = ss[static_cast<std::size_t>(c)];
    const double gain = std::sqrt(sst.variance) / std::sqrt(cst.variance + epsilon);
    const auto src = content.channel(c);
    auto dst = out.channel(c);
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k] = static_cast<float>(gain * (static_cast<double>(src[k]) - cst.mean) + sst.mean);
    }
  }
  return out;
}

FeatureMatrix whiten(const FeatureMatrix& content, const WctOptions& opts) {
  if (content.cols() < 2) {
    throw DegenerateInputError("whiten needs at least 2 samples per row");
  }
  Matrix fc = to_double(content);
  center_rows(fc);
  const Matrix cov = outer_self(fc) / static_cast<double>(fc.cols() - 1);
  Eigen::Index rank = 0;
  const Matrix w = spectral_map(sym_eig(cov), opts.eig_floor_ratio,
                                [](double l) { return 1.0 / std::sqrt(l); }, &rank);
  if (rank == 0) throw DegenerateInputError("whiten: content features have zero covariance");
  return to_features(w * fc);
}

FeatureMatrix color(const FeatureMatrix& whitened, const FeatureMatrix& style,
                    const WctOptions& opts, std::vector<double>* style_mean) {
  if (whitened.rows() != style.rows()) {
    throw ShapeError("color: content has " + std::to_string(whitened.rows()) +
                     " feature maps, style has " + std::to_string(style.rows()));
  }
  if (style.cols() < 2) throw DegenerateInputError("color needs at least 2 style samples per row");
  Matrix fs = to_double(style);
  const Vector ms = center_rows(fs);
  const Matrix cov = outer_self(fs) / static_cast<double>(fs.cols() - 1);
  const Matrix c = spectral_map(sym_eig(cov), opts.eig_floor_ratio,
                                [](double l) { return std::sqrt(l); }, nullptr);
  Matrix out = c * to_double(whitened);
  out.colwise() += ms;
  if (style_mean) style_mean->assign(ms.data(), ms.data() + ms.size());
  return to_features(out);
}

WctIntermediates wct(const FeatureMatrix& content, const FeatureMatrix& style,
                     const WctOptions& opts) {
  WctIntermediates r;
  r.whitened = whiten(content, opts);
  r.colored = color(r.whitened, style, opts, &r.style_mean);
  return r;
}

FeatureMatrix wct_blend(const FeatureMatrix& content, const FeatureMatrix& transformed,
                        double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("blend alpha must lie in [0, 1]");
  if (content.rows() != transformed.rows() || content.cols() != transformed.cols()) {
    throw ShapeError("wct_blend: feature matrices differ in shape");
  }
  FeatureMatrix out(content.rows(), content.cols());
  const auto a = static_cast<float>(alpha);
  const auto b = static_cast<float>(1.0 - alpha);
  const auto f = content.data();
  const auto g = transformed.data();
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * g[i] + b * f[i];
  return out;
}

}  // namespace nst
