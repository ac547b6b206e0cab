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

#include <string_view>
#include <vector>

#include "qfgr/core.hpp"

namespace qfgr {

double delta_kernel(double x, const DeltaKernel& kernel);

enum class RateFlavor { kConventional, kSymmetrized };

std::string_view to_string(RateFlavor flavor);

/// Generalized scattering rates P(l1, l2, m1, m2), units 1/time.
///
///   conventional: (2 pi / hbar) H'(l1,m1) conj(H'(l2,m2)) delta(e_l2 - e_m2)
///   symmetrized:  (2 pi / hbar) H'(l1,m1) conj(H'(l2,m2))
///                   delta((e_l1 + e_l2)/2 - (e_m1 + e_m2)/2)
class RateTensor {
 public:
  RateTensor(RateFlavor flavor, int n);

  RateFlavor flavor() const noexcept { return flavor_; }
  int dimension() const noexcept { return n_; }

  Complex& operator()(int l1, int l2, int m1, int m2) { return p_[index(l1, l2, m1, m2)]; }
  Complex operator()(int l1, int l2, int m1, int m2) const {
    return p_[index(l1, l2, m1, m2)];
  }

  const std::vector<Complex>& entries() const noexcept { return p_; }

 private:
  std::size_t index(int l1, int l2, int m1, int m2) const {
    return ((static_cast<std::size_t>(l1) * n_ + l2) * n_ + m1) * n_ + m2;
  }

  RateFlavor flavor_;
  int n_;
  std::vector<Complex> p_;
};

/// Linear map on N x N matrices stored as an N^2 x N^2 matrix acting on the
/// row-major vectorization (see vectorize()).
class Superoperator {
 public:
  explicit Superoperator(int n);
  explicit Superoperator(Matrix matrix);

  int dimension() const noexcept { return n_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Matrix& matrix() noexcept { return matrix_; }

  Matrix apply(const Matrix& rho) const;

  Superoperator& operator+=(const Superoperator& other);
  friend Superoperator operator+(Superoperator lhs, const Superoperator& rhs) {
    lhs += rhs;
    return lhs;
  }

  // max over columns (mu nu) of |sum_l S[(l l), (mu nu)]|
  double trace_defect() const;
  // max |S[(ab),(cd)] - conj(S[(ba),(dc)])|
  double hermiticity_defect() const;

 private:
  int n_;
  Matrix matrix_;
};

struct LindbladTerm {
  double omega = 0.0;  // frequency label, 1/time
  Matrix op;           // units 1/sqrt(time)
};

/// Discrete frequency family for -1/2 sum_w [L_w, [L_w, rho]].
///
/// Each L_w collects the interaction elements H'(a,b) whose half energy
/// difference (e_a - e_b)/2 equals -hbar w under the kernel's matching rule.
/// L_w^dagger = L_{-w}; the operators are Hermitian only when every class is
/// closed under (a,b) -> (b,a), e.g. a fully degenerate spectrum.
struct LindbladFamily {
  std::vector<LindbladTerm> terms;
  // Index pairs per term, same order as `terms`.
  std::vector<std::vector<std::pair<int, int>>> classes;
  // True when the discrete family reproduces the symmetrized rate generator
  // exactly: sharp kernel and pairwise-disjoint classes. Gaussian kernels
  // and chained sharp classes yield an approximation.
  bool exact = true;
};

RateTensor conventional_rates(const SystemSpec& spec);
RateTensor symmetrized_rates(const SystemSpec& spec);

// d rho(l1,l2)/dt = 1/2 sum [P(l1,l2,m1,m2) rho(m1,m2) - P(l1,m2,m1,m1) rho(m2,l2)] + H.c.
// with H.c. realized as the linear map rho -> (A[rho^dagger])^dagger.
Superoperator rates_to_superoperator(const RateTensor& rates);

LindbladFamily lindblad_family(const SystemSpec& spec);
Superoperator lindblad_superoperator(const LindbladFamily& family, int n);

// -(i/hbar)[H, rho] with H = H0, or H0 + H' when include_interaction is set.
Superoperator coherent_liouvillian(const SystemSpec& spec, bool include_interaction);

/// Semiclassical golden-rule rates (2 pi / hbar)|H'(l,m)|^2 delta(e_l - e_m).
RealMatrix fgr_rates(const SystemSpec& spec);

// df_l/dt = sum_m (P(l,m) f_m - P(m,l) f_l)
RealVector boltzmann_rhs(const RealMatrix& rates, const RealVector& f);

enum class GeneratorKind {
  kExact,         // -(i/hbar)[H0 + H', rho]
  kConventional,  // conventional Markov dissipator
  kQfgrRates,     // symmetrized rates through the in/out-scattering form
  kQfgrLindblad,  // same generator through the frequency family
  kBoltzmann,     // semiclassical rate equation (no superoperator)
};

std::string_view to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(std::string_view name);

// Dissipator for the kind, plus -(i/hbar)[H0, .] when include_coherent is set.
// kExact ignores include_coherent; kBoltzmann throws ParameterError.
Superoperator build_generator(const SystemSpec& spec, GeneratorKind kind, bool include_coherent);

}  // namespace qfgr
