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

#include <vector>

#include "qfgr/generators.hpp"

namespace qfgr {

/// Uniform grid t0, t0 + dt, ..., t1 with `steps` intervals.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 1;

  void validate() const;
  double spacing() const { return (t1 - t0) / steps; }
  double time(int k) const { return k == steps ? t1 : t0 + k * spacing(); }

  // 200 steps per 1/rate, at least one step.
  static TimeGrid with_default_steps(double t0, double t1, double rate);
};

struct SnapshotDiagnostics {
  double trace_re = 0.0;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double purity = 0.0;  // Re tr(rho^2)
};

SnapshotDiagnostics diagnose(const Matrix& rho);

/// Snapshots are stored unvalidated: losing positivity is something the
/// diagnostics are meant to observe.
struct Trajectory {
  TimeGrid grid;
  std::vector<Matrix> states;  // steps + 1 entries
  std::vector<SnapshotDiagnostics> diagnostics;
};

enum class Method { kExpm, kRk4 };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

// Throws DimensionError on size mismatch, PropagationError on non-finite state.
Trajectory propagate(const Superoperator& generator, const Matrix& rho0, const TimeGrid& grid,
                     Method method = Method::kExpm);
Trajectory propagate(const Superoperator& generator, const DensityMatrix& rho0,
                     const TimeGrid& grid, Method method = Method::kExpm);

struct SteadyState {
  Matrix state;  // Hermitized, unit trace
  double residual = 0.0;  // || gen vec(state) ||_2
  bool degenerate = false;  // more than one singular value below tolerance
};

// Null vector of the generator (smallest singular direction). Throws
// NoSteadyStateError when the smallest singular value exceeds
// 1e-10 max(1, largest singular value), or when no null vector has trace.
SteadyState steady_state(const Superoperator& generator);

struct BoltzmannTrajectory {
  TimeGrid grid;
  std::vector<RealVector> states;
};

// Classical RK4 on the rate equation. Throws StepSizeError if any occupation
// drops below -1e-12.
BoltzmannTrajectory propagate_boltzmann(const RealMatrix& rates, const Distribution& f0,
                                        const TimeGrid& grid);

// 1 / spectral radius of the generator; +infinity for a zero generator.
double relaxation_time(const Superoperator& generator);

}  // namespace qfgr
