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
#include <vector>

#include "qfgr/evolution.hpp"

namespace qfgr {

struct PositivityScan {
  double min_eigenvalue = 0.0;
  int index = 0;
  double time = 0.0;
};

// Throws ParameterError for an empty trajectory.
PositivityScan positivity_scan(const Trajectory& trajectory);

struct SearchConfig {
  std::uint64_t master_seed = 2024;
  int budget = 1000;
  int n_min = 3;
  int n_max = 6;
  double level_spacing = 1.0;
  double coupling_scale = 0.3;
  DeltaKernel kernel{KernelMode::kGaussian, 0.05};
  double relaxation_times = 10.0;  // horizon in units of relaxation_time()
  int steps = 200;
  int threads = 1;

  void validate() const;
};

/// One searched instance, reproducible from its seeds alone.
struct ViolationReport {
  int instance = 0;
  std::uint64_t system_seed = 0;
  int n = 0;
  std::uint64_t rho_seed = 0;
  double horizon = 0.0;
  int steps = 0;
  double worst_time = 0.0;
  double worst_min_eigenvalue = 0.0;

  bool violated(double tol = 1e-12) const { return worst_min_eigenvalue < -tol; }
  bool operator==(const ViolationReport&) const = default;
};

// Seeds of instance `index` of a search.
void search_instance_seeds(const SearchConfig& config, int index, std::uint64_t& system_seed,
                           std::uint64_t& rho_seed, int& n);

// System of instance `index`.
SystemSpec search_instance_system(const SearchConfig& config, int index);

// Propagates every instance under the conventional generator with the
// coherent term and returns the one with the most negative eigenvalue
// (lowest instance index on ties). Independent of `threads`.
ViolationReport search_positivity_violation(const SearchConfig& config);

struct CpReport {
  double min_eigenvalue = 0.0;  // projected Choi spectrum minimum, 1/time
  double tolerance = 0.0;
  bool cp = true;
};

// Conditional complete positivity of a generator: the Choi matrix projected
// onto the complement of the maximally entangled vector must be PSD.
// Throws PreconditionError if the generator is not trace and Hermiticity
// preserving (within 1e-10 max(1, ||gen||)).
CpReport conditional_cp_check(const Superoperator& generator);

struct T3Norms {
  double pop_to_coh = 0.0;
  double coh_to_pop = 0.0;
};

// Frobenius norms of the population/coherence off-diagonal blocks of the
// generator in the noninteracting eigenbasis.
T3Norms t3_block_norm(const Superoperator& generator, const SystemSpec& spec);

struct PurityEntropy {
  double purity = 0.0;
  double entropy = 0.0;
};

PurityEntropy purity_entropy(const DensityMatrix& rho);

}  // namespace qfgr
