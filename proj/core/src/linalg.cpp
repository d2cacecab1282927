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

#include "nst/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nst/error.hpp"

namespace nst {
namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

SymEig sym_eig(const Matrix& s, const JacobiOptions& opts) {
  if (s.rows() != s.cols()) throw ArgumentError("sym_eig: matrix is not square");
  const Eigen::Index n = s.rows();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (n > 0 && (s - s.transpose()).cwiseAbs().maxCoeff() > 1e-6 * scale) {
    throw ArgumentError("sym_eig: matrix is not symmetric");
  }

  Matrix a = 0.5 * (s + s.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double threshold = opts.tolerance * a.norm();

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        double* col_p = a.col(p).data();
        double* col_q = a.col(q).data();
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = col_p[k];
          const double akq = col_q[k];
          col_p[k] = c * akp - sn * akq;
          col_q[k] = sn * akp + c * akq;
        }
        col_p[p] = app - t * apq;
        col_q[q] = aqq + t * apq;
        col_p[q] = 0.0;
        col_q[p] = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          a(p, k) = col_p[k];
          a(q, k) = col_q[k];
        }

        double* vp = v.col(p).data();
        double* vq = v.col(q).data();
        for (Eigen::Index k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - sn * y;
          vq[k] = sn * x + c * y;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SymEig out{Vector(n), Matrix(n, n), sweep};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace nst
