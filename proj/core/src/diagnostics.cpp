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

#include "qfgr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>

#include "qfgr/errors.hpp"

namespace qfgr {

PositivityScan positivity_scan(const Trajectory& trajectory) {
  if (trajectory.diagnostics.empty()) throw ParameterError("empty trajectory");
  PositivityScan scan;
  scan.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trajectory.diagnostics.size(); ++k) {
    const double value = trajectory.diagnostics[k].min_eigenvalue;
    if (value < scan.min_eigenvalue) {
      scan.min_eigenvalue = value;
      scan.index = static_cast<int>(k);
    }
  }
  scan.time = trajectory.grid.time(scan.index);
  return scan;
}

void SearchConfig::validate() const {
  if (budget < 1) throw ParameterError("search budget must be at least 1");
  if (n_min < 2 || n_max < n_min) throw ParameterError("search needs 2 <= n_min <= n_max");
  if (!(level_spacing > 0.0)) throw ParameterError("level_spacing must be positive");
  if (!(coupling_scale >= 0.0)) throw ParameterError("coupling_scale must be nonnegative");
  if (!(relaxation_times > 0.0)) throw ParameterError("relaxation_times must be positive");
  if (steps < 1) throw ParameterError("steps must be at least 1");
  if (threads < 1) throw ParameterError("threads must be at least 1");
  kernel.validate();
}

void search_instance_seeds(const SearchConfig& config, int index, std::uint64_t& system_seed,
                           std::uint64_t& rho_seed, int& n) {
  const auto stream = static_cast<std::uint64_t>(index);
  system_seed = derive_seed(config.master_seed, 2 * stream);
  rho_seed = derive_seed(config.master_seed, 2 * stream + 1);
  const auto span = static_cast<std::uint64_t>(config.n_max - config.n_min + 1);
  n = config.n_min + static_cast<int>(derive_seed(system_seed, 0) % span);
}

SystemSpec search_instance_system(const SearchConfig& config, int index) {
  std::uint64_t system_seed = 0;
  std::uint64_t rho_seed = 0;
  int n = 0;
  search_instance_seeds(config, index, system_seed, rho_seed, n);
  return random_system(system_seed, n, config.level_spacing, config.coupling_scale,
                       config.kernel);
}

namespace {

ViolationReport evaluate_instance(const SearchConfig& config, int index) {
  ViolationReport report;
  report.instance = index;
  search_instance_seeds(config, index, report.system_seed, report.rho_seed, report.n);
  const SystemSpec spec = search_instance_system(config, index);
  const Superoperator dissipator = rates_to_superoperator(conventional_rates(spec));
  const Superoperator generator = dissipator + coherent_liouvillian(spec, false);
  const double tau = relaxation_time(dissipator);
  report.horizon = config.relaxation_times * (std::isfinite(tau) ? tau : 1.0);
  report.steps = config.steps;

  const Trajectory trajectory = propagate(generator, random_density(report.rho_seed, report.n),
                                          TimeGrid{0.0, report.horizon, config.steps});
  const PositivityScan scan = positivity_scan(trajectory);
  report.worst_min_eigenvalue = scan.min_eigenvalue;
  report.worst_time = scan.time;
  return report;
}

bool better(const ViolationReport& a, const ViolationReport& b) {
  if (a.worst_min_eigenvalue != b.worst_min_eigenvalue) {
    return a.worst_min_eigenvalue < b.worst_min_eigenvalue;
  }
  return a.instance < b.instance;
}

}  // namespace

ViolationReport search_positivity_violation(const SearchConfig& config) {
  config.validate();
  const int workers = std::min(config.threads, config.budget);
  std::vector<ViolationReport> best(workers);
  std::vector<std::exception_ptr> failures(workers);

  auto work = [&](int worker) {
    try {
      bool have = false;
      for (int i = worker; i < config.budget; i += workers) {
        ViolationReport candidate = evaluate_instance(config, i);
        if (!have || better(candidate, best[worker])) {
          best[worker] = candidate;
          have = true;
        }
      }
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return *std::min_element(best.begin(), best.end(), better);
}

CpReport conditional_cp_check(const Superoperator& generator) {
  const int n = generator.dimension();
  const Matrix& s = generator.matrix();
  const double norm = s.norm();
  const double precondition_tol = 1e-10 * std::max(1.0, norm);
  if (generator.trace_defect() > precondition_tol) {
    throw PreconditionError("generator is not trace preserving");
  }
  if (generator.hermiticity_defect() > precondition_tol) {
    throw PreconditionError("generator is not Hermiticity preserving");
  }

  // Choi reshuffle C[(a c), (b d)] = S[(a b), (c d)].
  const int n2 = n * n;
  Matrix choi(n2, n2);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) choi(a * n + c, b * n + d) = s(a * n + b, c * n + d);
      }
    }
  }
  Vector omega = Vector::Zero(n2);
  for (int a = 0; a < n; ++a) omega(a * n + a) = 1.0 / std::sqrt(static_cast<double>(n));
  const Matrix projector = Matrix::Identity(n2, n2) - omega * omega.adjoint();
  const Matrix projected = projector * choi * projector;

  CpReport report;
  report.min_eigenvalue = hermitian_eigenvalues(projected).minCoeff();
  report.tolerance = 1e-10 * norm;
  report.cp = report.min_eigenvalue >= -report.tolerance;
  return report;
}

T3Norms t3_block_norm(const Superoperator& generator, const SystemSpec& spec) {
  const int n = generator.dimension();
  if (spec.dimension() != n) throw DimensionError("spec and generator dimensions differ");
  const Matrix& s = generator.matrix();
  double pop_to_coh = 0.0;
  double coh_to_pop = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const bool row_population = a == b;
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const bool col_population = c == d;
          if (row_population == col_population) continue;
          const double weight = std::norm(s(a * n + b, c * n + d));
          (col_population ? pop_to_coh : coh_to_pop) += weight;
        }
      }
    }
  }
  return {std::sqrt(pop_to_coh), std::sqrt(coh_to_pop)};
}

PurityEntropy purity_entropy(const DensityMatrix& rho) {
  const RealVector eigenvalues = hermitian_eigenvalues(rho.data());
  PurityEntropy result;
  result.purity = (rho.data() * rho.data()).trace().real();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double p = std::max(0.0, eigenvalues(i));
    if (p > 0.0) result.entropy -= p * std::log(p);
  }
  return result;
}

}  // namespace qfgr
