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

#include <span>
#include <vector>

#include "nst/linalg.hpp"
#include "nst/tensor.hpp"

namespace nst {

// ---------------------------------------------------------------------------
// Second-order feature statistics

/// Unnormalized Gram matrix F * F^T, accumulated in double.
Matrix gram(const FeatureMatrix& f);

/// Row covariance (1 / (M - 1)) * Fc * Fc^T of the row-centered features.
/// Throws DegenerateInputError when M < 2.
Matrix covariance(const FeatureMatrix& f);

// ---------------------------------------------------------------------------
// Perceptual losses (diagnostics only, no gradients)

/// Layer weights omega_l and the content/style mixing weights of the total
/// loss. Defaults: omega uniform over layers, content 1, style 1e3.
struct StyleLossWeights {
  std::vector<double> layer_weights;
  double content_weight = 1.0;
  double style_weight = 1e3;

  static StyleLossWeights uniform(int layers);
  /// Throws ArgumentError unless every weight is finite and >= 0 and at least
  /// one layer weight is positive.
  void validate() const;
};

/// 0.5 * sum (F - P)^2. Throws ShapeError on shape mismatch.
double content_loss(const FeatureMap& generated, const FeatureMap& target);

/// sum (G - A)^2 / (4 N^2 M^2) for one layer with N maps of M positions.
double style_layer_loss(const Matrix& generated_gram, const Matrix& target_gram, int maps,
                        long positions);

/// Gram matrices of one style layer plus its feature-map count N and size M.
struct StyleLayer {
  Matrix generated;
  Matrix target;
  int maps = 0;
  long positions = 0;
};

/// 0.5 * sum_l omega_l * E_l.
double style_loss(std::span<const StyleLayer> layers, const StyleLossWeights& weights);
/// Same sum taking precomputed per-layer E_l.
double style_loss(std::span<const double> layer_losses, const StyleLossWeights& weights);

/// content_weight * Lc + style_weight * Ls.
double total_loss(double content, double style, const StyleLossWeights& weights);

// ---------------------------------------------------------------------------
// Feature transforms

inline constexpr double kAdainEpsilon = 1e-5;

/// Per channel: sigma_s * (x - mu_c) / sqrt(var_c + eps) + mu_s. Channel counts
/// must agree; spatial sizes may differ.
FeatureMap adain(const FeatureMap& content, const FeatureMap& style,
                 double epsilon = kAdainEpsilon);

struct WctOptions {
  /// Eigenvalues at or below ratio * lambda_max are dropped.
  double eig_floor_ratio = 1e-5;
};

/// Centers the content features and decorrelates them to unit variance on the
/// retained eigen-subspace of their covariance. Throws DegenerateInputError
/// when the covariance has no usable eigenvalue.
FeatureMatrix whiten(const FeatureMatrix& content, const WctOptions& opts = {});

/// Imposes the style covariance on whitened features and re-centers them on
/// the style mean. `style_mean`, when given, receives that mean.
FeatureMatrix color(const FeatureMatrix& whitened, const FeatureMatrix& style,
                    const WctOptions& opts = {}, std::vector<double>* style_mean = nullptr);

struct WctIntermediates {
  FeatureMatrix whitened;
  FeatureMatrix colored;
  std::vector<double> style_mean;
};

/// whiten followed by color.
WctIntermediates wct(const FeatureMatrix& content, const FeatureMatrix& style,
                     const WctOptions& opts = {});

/// alpha * transformed + (1 - alpha) * content, alpha in [0, 1].
FeatureMatrix wct_blend(const FeatureMatrix& content, const FeatureMatrix& transformed,
                        double alpha);

}  // namespace nst
