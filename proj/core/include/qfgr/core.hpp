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

#include <cstdint>
#include <string_view>
#include <vector>

#include "qfgr/linalg.hpp"

namespace qfgr {

enum class KernelMode { kGaussian, kSharp };

std::string_view to_string(KernelMode mode);
KernelMode kernel_mode_from_string(std::string_view name);

/// Finite-width stand-in for the energy-conserving delta distribution.
///
/// gaussian: exp(-x^2 / 2 eta^2) / (sqrt(2 pi) eta)
/// sharp:    1 / (sqrt(2 pi) eta) for |x| <= eta, 0 otherwise
///
/// Both modes have units of 1/energy and share the same peak value, so the
/// sharp mode reproduces exact-matching statements on discrete spectra.
struct DeltaKernel {
  KernelMode mode = KernelMode::kGaussian;
  double eta = 0.05;

  // Throws ParameterError unless eta > 0 and finite.
  void validate() const;
};

/// Noninteracting spectrum, interaction matrix and kernel of one model.
///
/// Indices refer to the eigenbasis of the noninteracting Hamiltonian, so the
/// free Hamiltonian is diag(energies). Immutable after construction.
class SystemSpec {
 public:
  // Throws ParameterError / DimensionError on N < 2, hbar <= 0, size mismatch
  // or an interaction that is not Hermitian within 1e-12 relative tolerance.
  SystemSpec(std::vector<double> energies, Matrix interaction,
             DeltaKernel kernel, double hbar = 1.0);

  int dimension() const noexcept { return static_cast<int>(energies_.size()); }
  const std::vector<double>& energies() const noexcept { return energies_; }
  double energy(int index) const { return energies_.at(index); }
  const Matrix& interaction() const noexcept { return interaction_; }
  const DeltaKernel& kernel() const noexcept { return kernel_; }
  double hbar() const noexcept { return hbar_; }

  Matrix free_hamiltonian() const;

 private:
  std::vector<double> energies_;
  Matrix interaction_;
  DeltaKernel kernel_;
  double hbar_;
};

struct ValidationReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;  // |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool passes(double tol) const {
    return hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
  }
};

// Throws DimensionError for non-square or empty input.
ValidationReport validate_density(const Matrix& rho);

/// Hermitian, unit-trace, positive-semidefinite matrix (checked at 1e-12).
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit DensityMatrix(Matrix data);

  const Matrix& data() const noexcept { return data_; }
  int dimension() const noexcept { return static_cast<int>(data_.rows()); }

  static DensityMatrix maximally_mixed(int n);
  static DensityMatrix pure_level(int n, int level);

 private:
  Matrix data_;
};

/// Semiclassical occupations f_lambda >= 0.
class Distribution {
 public:
  explicit Distribution(RealVector f);

  const RealVector& values() const noexcept { return f_; }
  int dimension() const noexcept { return static_cast<int>(f_.size()); }

  // Diagonal of a density matrix; negative entries within 1e-12 are clipped.
  static Distribution from_density(const DensityMatrix& rho);

 private:
  RealVector f_;
};

// A A^dagger / tr(A A^dagger) with A a seeded standard complex Gaussian matrix.
DensityMatrix random_density(std::uint64_t seed, int n);

// Energies uniform in [0, (n-1) level_spacing], sorted; interaction
// (B + B^dagger)/2 with B complex Gaussian scaled by coupling_scale.
SystemSpec random_system(std::uint64_t seed, int n, double level_spacing,
                         double coupling_scale, DeltaKernel kernel, double hbar = 1.0);

}  // namespace qfgr
