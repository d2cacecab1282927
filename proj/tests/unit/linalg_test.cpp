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

#include <random>

#include <Eigen/Eigenvalues>

#include <gtest/gtest.h>

#include "nst/error.hpp"

namespace nst {
namespace {

Matrix random_symmetric(int n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = d(rng);
  }
  return a;
}

double reconstruction_residual(const Matrix& s, const SymEig& e) {
  const Matrix r = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  return (s - r).norm() / s.norm();
}

double orthonormality_error(const SymEig& e) {
  const Matrix g = e.vectors.transpose() * e.vectors;
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

TEST(SymEig, Identity) {
  const SymEig e = sym_eig(Matrix::Identity(4, 4));
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(e.values(i), 1.0);
  EXPECT_LT(orthonormality_error(e), 1e-12);
}

TEST(SymEig, DiagonalIsSortedDescending) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 4.0;
  const SymEig e = sym_eig(d);
  EXPECT_DOUBLE_EQ(e.values(0), 4.0);
  EXPECT_DOUBLE_EQ(e.values(1), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(e.vectors(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(e.vectors(0, 1)), 1.0);
}

TEST(SymEig, Random8x8) {
  std::mt19937 rng(1);
  const Matrix s = random_symmetric(8, rng);
  const SymEig e = sym_eig(s);
  EXPECT_LT(reconstruction_residual(s, e), 1e-4);
  EXPECT_LT(orthonormality_error(e), 1e-5);
}

TEST(SymEig, RandomUpTo64) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix s = random_symmetric(size(rng), rng);
    const SymEig e = sym_eig(s);
    EXPECT_LT(reconstruction_residual(s, e), 1e-4);
    EXPECT_LT(orthonormality_error(e), 1e-5);
    for (int i = 1; i < e.values.size(); ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  }
}

TEST(SymEig, AgreesWithReferenceSolverEigenvalues) {
  std::mt19937 rng(3);
  const Matrix s = random_symmetric(20, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> ref(s);
  const SymEig e = sym_eig(s);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(e.values(i), ref.eigenvalues()(19 - i), 1e-9);
}

TEST(SymEig, RankDeficientPsd) {
  std::mt19937 rng(4);
  std::normal_distribution<double> d;
  Matrix f(10, 3);
  for (int i = 0; i < f.size(); ++i) f.data()[i] = d(rng);
  const Matrix s = f * f.transpose();
  const SymEig e = sym_eig(s);
  EXPECT_LT(reconstruction_residual(s, e), 1e-4);
  for (int i = 3; i < 10; ++i) EXPECT_NEAR(e.values(i), 0.0, 1e-9 * e.values(0));
}

TEST(SymEig, RejectsNonSymmetric) {
  Matrix a = Matrix::Identity(3, 3);
  a(0, 2) = 1.0;
  EXPECT_THROW(sym_eig(a), ArgumentError);
  EXPECT_THROW(sym_eig(Matrix::Zero(2, 3)), ArgumentError);
}

TEST(SymEig, ToleratesRoundoffAsymmetry) {
  Matrix a = Matrix::Identity(3, 3);
  a(0, 1) = 0.5;
  a(1, 0) = 0.5 + 1e-9;
  EXPECT_NO_THROW(sym_eig(a));
}

}  // namespace
}  // namespace nst
