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

// Independent reference evaluations used only by the tests. Each one follows
// a different algebraic route from the library code it checks.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "qfgr/qfgr.hpp"

namespace qfgr::testing {

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix unit(int n, int a, int b) {
  Matrix e = Matrix::Zero(n, n);
  e(a, b) = 1.0;
  return e;
}

// In/out-scattering sum with the rate tensor, evaluated element by element;
// "+ H.c." is the Hermitian conjugate of the same sum taken at rho^dagger.
inline Matrix direct_rate_sum(const RateTensor& p, const Matrix& rho) {
  const int n = p.dimension();
  auto one_sided = [&](const Matrix& r) {
    Matrix out = Matrix::Zero(n, n);
    for (int l1 = 0; l1 < n; ++l1) {
      for (int l2 = 0; l2 < n; ++l2) {
        Complex sum = 0.0;
        for (int m1 = 0; m1 < n; ++m1) {
          for (int m2 = 0; m2 < n; ++m2) {
            sum += p(l1, l2, m1, m2) * r(m1, m2) - p(l1, m2, m1, m1) * r(m2, l2);
          }
        }
        out(l1, l2) = 0.5 * sum;
      }
    }
    return out;
  };
  return one_sided(rho) + Matrix(one_sided(rho.adjoint())).adjoint();
}

// -1/2 [Hi, [K, rho]] with Hi = H'/hbar and K the full-line time integral of
// the interaction-picture coupling, K(a,b) = 2 pi delta(e_a - e_b) H'(a,b).
inline Matrix conventional_double_commutator(const SystemSpec& spec, const Matrix& rho) {
  const int n = spec.dimension();
  const Matrix& h = spec.interaction();
  Matrix k(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      k(a, b) = 2.0 * std::numbers::pi * delta_kernel(spec.energy(a) - spec.energy(b), spec.kernel()) *
                h(a, b);
    }
  }
  return -0.5 * commutator(h / spec.hbar(), commutator(k, rho));
}

// Symmetrized double commutator expanded over matrix units: the tau integral
// of exp(i((e_a - e_b) - (e_c - e_d)) tau / 2 hbar) fixes the kernel argument.
inline Matrix symmetrized_double_commutator(const SystemSpec& spec, const Matrix& rho) {
  const int n = spec.dimension();
  const Matrix& h = spec.interaction();
  const auto& e = spec.energies();
  const double prefactor = 2.0 * std::numbers::pi / spec.hbar();
  Matrix out = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const double w = delta_kernel(((e[a] - e[b]) - (e[c] - e[d])) / 2.0, spec.kernel());
          if (w == 0.0) continue;
          out += -0.5 * prefactor * w * h(a, b) * h(c, d) *
                 commutator(unit(n, a, b), commutator(unit(n, c, d), rho));
        }
      }
    }
  }
  return out;
}

// Eigenvalues through the general (non-Hermitian) solver.
inline Eigen::VectorXd general_eigenvalues_real(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  Eigen::VectorXd values = solver.eigenvalues().real();
  std::sort(values.data(), values.data() + values.size());
  return values;
}

inline RealVector brute_boltzmann(const RealMatrix& p, const RealVector& f) {
  const Eigen::Index n = f.size();
  RealVector in = RealVector::Zero(n);
  RealVector out = RealVector::Zero(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index m = 0; m < n; ++m) {
      in(l) += p(l, m) * f(m);
      out(l) += p(m, l) * f(l);
    }
  }
  return in - out;
}

inline std::filesystem::path source_dir() { return QFGR_SOURCE_DIR; }

inline nlohmann::json load_fixture(const std::string& name) {
  std::ifstream in(source_dir() / "tests" / "fixtures" / name);
  return nlohmann::json::parse(in);
}

// Golden instance: random_system(3, 4, 1.0, 0.1, gaussian 0.05), frozen.
inline SystemSpec golden_system(KernelMode mode = KernelMode::kGaussian) {
  const nlohmann::json j = load_fixture("golden_system.json");
  std::vector<double> energies = j.at("energies").get<std::vector<double>>();
  const auto& re = j.at("interaction").at("re");
  const auto& im = j.at("interaction").at("im");
  Matrix h(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) h(a, b) = Complex(re[a][b].get<double>(), im[a][b].get<double>());
  }
  return SystemSpec(std::move(energies), std::move(h), DeltaKernel{mode, 0.05});
}

inline SystemSpec two_level(double e0, double e1, Matrix h, DeltaKernel kernel) {
  return SystemSpec({e0, e1}, std::move(h), kernel);
}

inline Matrix hermitian_2x2(double h00, Complex h01, double h11) {
  Matrix h(2, 2);
  h << h00, h01, std::conj(h01), h11;
  return h;
}

// Random GKSL family with Hermitian operators.
inline LindbladFamily random_hermitian_family(std::uint64_t seed, int n, int count) {
  Rng rng(seed);
  LindbladFamily family;
  for (int k = 0; k < count; ++k) {
    Matrix b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) b(i, j) = rng.complex_normal();
    }
    family.terms.push_back({static_cast<double>(k), 0.5 * (b + b.adjoint())});
    family.classes.emplace_back();
  }
  return family;
}

}  // namespace qfgr::testing
