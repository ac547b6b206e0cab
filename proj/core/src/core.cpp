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

#include "qfgr/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfgr/errors.hpp"

namespace qfgr {

std::string_view to_string(KernelMode mode) {
  return mode == KernelMode::kGaussian ? "gaussian" : "sharp";
}

KernelMode kernel_mode_from_string(std::string_view name) {
  if (name == "gaussian") return KernelMode::kGaussian;
  if (name == "sharp") return KernelMode::kSharp;
  throw ParameterError("unknown kernel mode '" + std::string(name) + "'");
}

void DeltaKernel::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError("kernel eta must be positive, got " + std::to_string(eta));
  }
}

SystemSpec::SystemSpec(std::vector<double> energies, Matrix interaction, DeltaKernel kernel,
                       double hbar)
    : energies_(std::move(energies)),
      interaction_(std::move(interaction)),
      kernel_(kernel),
      hbar_(hbar) {
  const auto n = static_cast<Eigen::Index>(energies_.size());
  if (n < 2) throw DimensionError("system needs at least two levels");
  if (interaction_.rows() != n || interaction_.cols() != n) {
    throw DimensionError("interaction must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw ParameterError("hbar must be positive");
  kernel_.validate();
  for (double e : energies_) {
    if (!std::isfinite(e)) throw ParameterError("energies must be finite");
  }
  if (!interaction_.allFinite()) throw ParameterError("interaction must be finite");
  const double scale = std::max(1.0, interaction_.cwiseAbs().maxCoeff());
  if (hermiticity_defect(interaction_) > 1e-12 * scale) {
    throw ParameterError("interaction is not Hermitian");
  }
}

Matrix SystemSpec::free_hamiltonian() const {
  Matrix h = Matrix::Zero(dimension(), dimension());
  for (int i = 0; i < dimension(); ++i) h(i, i) = energies_[i];
  return h;
}

ValidationReport validate_density(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw DimensionError("density matrix must be square and nonempty");
  }
  ValidationReport report;
  report.hermiticity_defect = hermiticity_defect(rho);
  report.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  report.min_eigenvalue = hermitian_eigenvalues(rho).minCoeff();
  return report;
}

DensityMatrix::DensityMatrix(Matrix data) : data_(std::move(data)) {
  const ValidationReport report = validate_density(data_);
  if (!report.passes(kTolerance)) {
    throw ParameterError("not a density matrix: hermiticity defect " +
                         std::to_string(report.hermiticity_defect) + ", trace defect " +
                         std::to_string(report.trace_defect) + ", min eigenvalue " +
                         std::to_string(report.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  if (n < 1) throw DimensionError("dimension must be positive");
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::pure_level(int n, int level) {
  if (n < 1) throw DimensionError("dimension must be positive");
  if (level < 0 || level >= n) throw ParameterError("level index out of range");
  Matrix m = Matrix::Zero(n, n);
  m(level, level) = 1.0;
  return DensityMatrix(std::move(m));
}

Distribution::Distribution(RealVector f) : f_(std::move(f)) {
  for (Eigen::Index i = 0; i < f_.size(); ++i) {
    if (!(f_(i) >= 0.0)) throw ParameterError("distribution entries must be nonnegative");
  }
}

Distribution Distribution::from_density(const DensityMatrix& rho) {
  RealVector f = rho.data().diagonal().real();
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f(i) < 0.0 && f(i) >= -DensityMatrix::kTolerance) f(i) = 0.0;
  }
  return Distribution(std::move(f));
}

DensityMatrix random_density(std::uint64_t seed, int n) {
  if (n < 1) throw DimensionError("dimension must be positive");
  Rng rng(seed);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  }
  Matrix rho = a * a.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

SystemSpec random_system(std::uint64_t seed, int n, double level_spacing, double coupling_scale,
                         DeltaKernel kernel, double hbar) {
  if (n < 2) throw DimensionError("system needs at least two levels");
  if (!(level_spacing > 0.0) || !(coupling_scale >= 0.0) || !std::isfinite(level_spacing) ||
      !std::isfinite(coupling_scale)) {
    throw ParameterError("level_spacing must be positive and coupling_scale nonnegative");
  }
  Rng rng(seed);
  std::vector<double> energies(n);
  for (double& e : energies) e = rng.uniform() * (n - 1) * level_spacing;
  std::sort(energies.begin(), energies.end());

  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = coupling_scale * rng.complex_normal();
  }
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Complex(b(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = 0.5 * (b(i, j) + std::conj(b(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return SystemSpec(std::move(energies), std::move(h), kernel, hbar);
}

}  // namespace qfgr
