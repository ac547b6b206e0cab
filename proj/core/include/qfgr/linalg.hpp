// Copyright 2026 The qfgr Authors
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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qfgr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Row-major vectorization: element (a, b) of an N x N matrix lands at a*N + b.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v);

// max |m - m^dagger|
double hermiticity_defect(const Matrix& m);

// Eigenvalues of the Hermitian part of m, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

// Largest |eigenvalue| of a general square matrix.
double spectral_radius(const Matrix& m);

// Kronecker product with Eigen's (a*n + b, c*n + d) = A(a,c) B(b,d) layout.
Matrix kron(const Matrix& a, const Matrix& b);

/// Seeded random source whose output depends only on the seed and the
/// standardized mt19937_64 engine, not on library distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  // Complex Gaussian with independent standard normal real and imaginary parts.
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 finalizer over (seed, stream); used to derive independent
// per-instance seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qfgr
