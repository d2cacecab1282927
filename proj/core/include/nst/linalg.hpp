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

#include <Eigen/Core>

namespace nst {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymEig {
  /// Descending.
  Vector values;
  /// Column k is the unit eigenvector of values[k].
  Matrix vectors;
  int sweeps = 0;
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm drops below tolerance * |S|_F.
  double tolerance = 1e-10;
  int max_sweeps = 100;
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Works on a private copy. Throws ArgumentError if S is not square or
/// |S - S^T| exceeds 1e-6 * max(1, max|S|).
SymEig sym_eig(const Matrix& s, const JacobiOptions& opts = {});

}  // namespace nst
