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

#include "qfgr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qfgr/errors.hpp"

namespace qfgr {

namespace {

// h1 conj(h2) is formed first so that h1 == h2 gives an exactly real product,
// which keeps the diagonal slices of both tensors bit-identical to fgr_rates.
Complex rate_entry(Complex h1, Complex h2, double prefactor, double delta) {
  return (h1 * std::conj(h2)) * (prefactor * delta);
}

double golden_rule_prefactor(const SystemSpec& spec) {
  return 2.0 * std::numbers::pi / spec.hbar();
}

template <typename DeltaArgument>
RateTensor build_rates(const SystemSpec& spec, RateFlavor flavor, DeltaArgument argument) {
  const int n = spec.dimension();
  const Matrix& h = spec.interaction();
  const double prefactor = golden_rule_prefactor(spec);
  RateTensor rates(flavor, n);
  for (int l1 = 0; l1 < n; ++l1) {
    for (int l2 = 0; l2 < n; ++l2) {
      for (int m1 = 0; m1 < n; ++m1) {
        for (int m2 = 0; m2 < n; ++m2) {
          const double delta = delta_kernel(argument(l1, l2, m1, m2), spec.kernel());
          rates(l1, l2, m1, m2) = rate_entry(h(l1, m1), h(l2, m2), prefactor, delta);
        }
      }
    }
  }
  return rates;
}

}  // namespace

double delta_kernel(double x, const DeltaKernel& kernel) {
  const double peak = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * kernel.eta);
  if (kernel.mode == KernelMode::kSharp) return std::abs(x) <= kernel.eta ? peak : 0.0;
  const double u = x / kernel.eta;
  return peak * std::exp(-0.5 * u * u);
}

std::string_view to_string(RateFlavor flavor) {
  return flavor == RateFlavor::kConventional ? "conventional" : "symmetrized";
}

RateTensor::RateTensor(RateFlavor flavor, int n)
    : flavor_(flavor), n_(n), p_(static_cast<std::size_t>(n) * n * n * n, Complex(0.0, 0.0)) {
  if (n < 1) throw DimensionError("rate tensor dimension must be positive");
}

Superoperator::Superoperator(int n) : n_(n), matrix_(Matrix::Zero(n * n, n * n)) {
  if (n < 1) throw DimensionError("superoperator dimension must be positive");
}

Superoperator::Superoperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("superoperator must be square");
  n_ = static_cast<int>(std::llround(std::sqrt(static_cast<double>(matrix_.rows()))));
  if (n_ < 1 || static_cast<Eigen::Index>(n_) * n_ != matrix_.rows()) {
    throw DimensionError("superoperator size must be a nonzero perfect square");
  }
}

Matrix Superoperator::apply(const Matrix& rho) const {
  if (rho.rows() != n_ || rho.cols() != n_) throw DimensionError("operand dimension mismatch");
  return unvectorize(matrix_ * vectorize(rho));
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  if (other.n_ != n_) throw DimensionError("superoperator dimension mismatch");
  matrix_ += other.matrix_;
  return *this;
}

double Superoperator::trace_defect() const {
  double worst = 0.0;
  for (Eigen::Index col = 0; col < matrix_.cols(); ++col) {
    Complex sum = 0.0;
    for (int l = 0; l < n_; ++l) sum += matrix_(l * n_ + l, col);
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

double Superoperator::hermiticity_defect() const {
  double worst = 0.0;
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      for (int c = 0; c < n_; ++c) {
        for (int d = 0; d < n_; ++d) {
          const Complex lhs = matrix_(a * n_ + b, c * n_ + d);
          const Complex rhs = std::conj(matrix_(b * n_ + a, d * n_ + c));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return worst;
}

RateTensor conventional_rates(const SystemSpec& spec) {
  const auto& e = spec.energies();
  return build_rates(spec, RateFlavor::kConventional,
                     [&e](int, int l2, int, int m2) { return e[l2] - e[m2]; });
}

RateTensor symmetrized_rates(const SystemSpec& spec) {
  const auto& e = spec.energies();
  return build_rates(spec, RateFlavor::kSymmetrized, [&e](int l1, int l2, int m1, int m2) {
    return (e[l1] + e[l2]) / 2.0 - (e[m1] + e[m2]) / 2.0;
  });
}

Superoperator rates_to_superoperator(const RateTensor& rates) {
  const int n = rates.dimension();
  // One-sided map A; the generator is A[rho] + (A[rho^dagger])^dagger.
  Matrix one_sided = Matrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Eigen::Index row = a * n + b;
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) one_sided(row, c * n + d) += 0.5 * rates(a, b, c, d);
      }
      for (int d = 0; d < n; ++d) {
        Complex out = 0.0;
        for (int c = 0; c < n; ++c) out += rates(a, d, c, c);
        one_sided(row, d * n + b) -= 0.5 * out;
      }
    }
  }
  Superoperator generator(n);
  Matrix& s = generator.matrix();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          s(a * n + b, c * n + d) =
              one_sided(a * n + b, c * n + d) + std::conj(one_sided(b * n + a, d * n + c));
        }
      }
    }
  }
  return generator;
}

LindbladFamily lindblad_family(const SystemSpec& spec) {
  const int n = spec.dimension();
  const DeltaKernel& kernel = spec.kernel();
  const auto& e = spec.energies();

  struct Pair {
    double half_difference;
    int a;
    int b;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) pairs.push_back({(e[a] - e[b]) / 2.0, a, b});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return x.half_difference < y.half_difference;
  });

  LindbladFamily family;
  std::vector<std::vector<Pair>> groups;
  if (kernel.mode == KernelMode::kSharp) {
    // Single linkage: a gap wider than eta starts a new class. The partition
    // matches the kernel exactly only if no class spreads wider than eta.
    for (const Pair& p : pairs) {
      if (groups.empty() || p.half_difference - groups.back().back().half_difference > kernel.eta) {
        groups.emplace_back();
      }
      groups.back().push_back(p);
    }
    for (const auto& g : groups) {
      if (g.back().half_difference - g.front().half_difference > kernel.eta) family.exact = false;
    }
  } else {
    // Hard bins of width eta centred on multiples of eta.
    family.exact = false;
    long current = 0;
    for (const Pair& p : pairs) {
      const long bin = std::lround(p.half_difference / kernel.eta);
      if (groups.empty() || bin != current) {
        groups.emplace_back();
        current = bin;
      }
      groups.back().push_back(p);
    }
  }

  const double amplitude =
      std::sqrt(golden_rule_prefactor(spec) * delta_kernel(0.0, kernel));
  const Matrix& h = spec.interaction();
  for (const auto& g : groups) {
    LindbladTerm term;
    term.op = Matrix::Zero(n, n);
    double mean = 0.0;
    std::vector<std::pair<int, int>> members;
    for (const Pair& p : g) {
      term.op(p.a, p.b) = amplitude * h(p.a, p.b);
      mean += p.half_difference;
      members.emplace_back(p.a, p.b);
    }
    term.omega = -(mean / static_cast<double>(g.size())) / spec.hbar();
    family.terms.push_back(std::move(term));
    family.classes.push_back(std::move(members));
  }
  return family;
}

Superoperator lindblad_superoperator(const LindbladFamily& family, int n) {
  Superoperator generator(n);
  const Matrix identity = Matrix::Identity(n, n);
  for (const LindbladTerm& term : family.terms) {
    if (term.op.rows() != n || term.op.cols() != n) {
      throw DimensionError("Lindblad operator dimension mismatch");
    }
    const Matrix square = term.op * term.op;
    // -1/2 [L, [L, rho]] = -1/2 (L^2 rho - 2 L rho L + rho L^2)
    generator.matrix() += -0.5 * kron(square, identity) + kron(term.op, term.op.transpose()) -
                          0.5 * kron(identity, square.transpose());
  }
  return generator;
}

Superoperator coherent_liouvillian(const SystemSpec& spec, bool include_interaction) {
  const int n = spec.dimension();
  Matrix h = spec.free_hamiltonian();
  if (include_interaction) h += spec.interaction();
  const Matrix identity = Matrix::Identity(n, n);
  const Complex factor(0.0, -1.0 / spec.hbar());
  return Superoperator(Matrix(factor * (kron(h, identity) - kron(identity, h.transpose()))));
}

RealMatrix fgr_rates(const SystemSpec& spec) {
  const int n = spec.dimension();
  const Matrix& h = spec.interaction();
  const auto& e = spec.energies();
  const double prefactor = golden_rule_prefactor(spec);
  RealMatrix rates(n, n);
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      rates(l, m) = rate_entry(h(l, m), h(l, m), prefactor, delta_kernel(e[l] - e[m], spec.kernel()))
                        .real();
    }
  }
  return rates;
}

RealVector boltzmann_rhs(const RealMatrix& rates, const RealVector& f) {
  if (rates.rows() != rates.cols() || rates.rows() != f.size()) {
    throw DimensionError("rate matrix and distribution dimensions differ");
  }
  const Eigen::Index n = f.size();
  RealVector out = RealVector::Zero(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    double sum = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) sum += rates(l, m) * f(m) - rates(m, l) * f(l);
    out(l) = sum;
  }
  return out;
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kExact: return "exact";
    case GeneratorKind::kConventional: return "conventional";
    case GeneratorKind::kQfgrRates: return "qfgr-rates";
    case GeneratorKind::kQfgrLindblad: return "qfgr-lindblad";
    case GeneratorKind::kBoltzmann: return "boltzmann";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(std::string_view name) {
  for (GeneratorKind kind : {GeneratorKind::kExact, GeneratorKind::kConventional,
                             GeneratorKind::kQfgrRates, GeneratorKind::kQfgrLindblad,
                             GeneratorKind::kBoltzmann}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParameterError("unknown generator '" + std::string(name) + "'");
}

Superoperator build_generator(const SystemSpec& spec, GeneratorKind kind, bool include_coherent) {
  switch (kind) {
    case GeneratorKind::kExact:
      return coherent_liouvillian(spec, true);
    case GeneratorKind::kBoltzmann:
      throw ParameterError("the Boltzmann generator acts on distributions, not density matrices");
    default:
      break;
  }
  Superoperator generator =
      kind == GeneratorKind::kConventional  ? rates_to_superoperator(conventional_rates(spec))
      : kind == GeneratorKind::kQfgrRates ? rates_to_superoperator(symmetrized_rates(spec))
                                          : lindblad_superoperator(lindblad_family(spec),
                                                                   spec.dimension());
  if (include_coherent) generator += coherent_liouvillian(spec, false);
  return generator;
}

}  // namespace qfgr
