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

#include "qfgr/evolution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "qfgr/errors.hpp"

namespace qfgr {

void TimeGrid::validate() const {
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw ParameterError("time grid needs finite t1 > t0");
  }
  if (steps < 1) throw ParameterError("time grid needs at least one step");
}

TimeGrid TimeGrid::with_default_steps(double t0, double t1, double rate) {
  const double count = std::ceil(200.0 * (t1 - t0) * rate);
  TimeGrid grid{t0, t1, count >= 1.0 && std::isfinite(count) ? static_cast<int>(count) : 1};
  grid.validate();
  return grid;
}

SnapshotDiagnostics diagnose(const Matrix& rho) {
  SnapshotDiagnostics d;
  d.trace_re = rho.trace().real();
  d.hermiticity_defect = hermiticity_defect(rho);
  d.min_eigenvalue = hermitian_eigenvalues(rho).minCoeff();
  d.purity = (rho * rho).trace().real();
  return d;
}

std::string_view to_string(Method method) { return method == Method::kExpm ? "expm" : "rk4"; }

Method method_from_string(std::string_view name) {
  if (name == "expm") return Method::kExpm;
  if (name == "rk4") return Method::kRk4;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

Trajectory propagate(const Superoperator& generator, const Matrix& rho0, const TimeGrid& grid,
                     Method method) {
  grid.validate();
  const int n = generator.dimension();
  if (rho0.rows() != n || rho0.cols() != n) {
    throw DimensionError("initial state does not match generator dimension");
  }
  const double dt = grid.spacing();
  const Matrix& s = generator.matrix();

  Trajectory trajectory;
  trajectory.grid = grid;
  trajectory.states.reserve(grid.steps + 1);
  trajectory.diagnostics.reserve(grid.steps + 1);

  Matrix step;
  if (method == Method::kExpm) step = (s * dt).exp();

  Vector v = vectorize(rho0);
  for (int k = 0; k <= grid.steps; ++k) {
    if (k > 0) {
      if (method == Method::kExpm) {
        v = step * v;
      } else {
        const Vector k1 = s * v;
        const Vector k2 = s * (v + 0.5 * dt * k1);
        const Vector k3 = s * (v + 0.5 * dt * k2);
        const Vector k4 = s * (v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    if (!v.allFinite()) {
      throw PropagationError("non-finite state at step " + std::to_string(k),
                             static_cast<std::size_t>(k > 0 ? k - 1 : 0));
    }
    Matrix rho = unvectorize(v);
    trajectory.diagnostics.push_back(diagnose(rho));
    trajectory.states.push_back(std::move(rho));
  }
  return trajectory;
}

Trajectory propagate(const Superoperator& generator, const DensityMatrix& rho0,
                     const TimeGrid& grid, Method method) {
  return propagate(generator, rho0.data(), grid, method);
}

SteadyState steady_state(const Superoperator& generator) {
  const int n = generator.dimension();
  const Matrix& s = generator.matrix();
  Eigen::BDCSVD<Matrix> svd(s, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double tolerance = 1e-10 * std::max(1.0, sigma(0));

  std::vector<Eigen::Index> null_columns;
  for (Eigen::Index k = sigma.size() - 1; k >= 0 && sigma(k) <= tolerance; --k) {
    null_columns.push_back(k);
  }
  if (null_columns.empty()) {
    throw NoSteadyStateError("generator has no null vector (smallest singular value " +
                             std::to_string(sigma(sigma.size() - 1)) + ")");
  }

  // Project vec(identity) onto the null space: picks the trace-carrying
  // direction and returns identity itself when identity is stationary.
  const Matrix& v = svd.matrixV();
  Vector combination = Vector::Zero(s.rows());
  for (Eigen::Index k : null_columns) {
    Complex overlap = 0.0;
    for (int l = 0; l < n; ++l) overlap += std::conj(v(l * n + l, k));
    combination += overlap * v.col(k);
  }
  Matrix rho = unvectorize(combination);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex trace = rho.trace();
  if (std::abs(trace) < 1e-12) throw NoSteadyStateError("null space carries no trace");
  rho /= trace;

  SteadyState result;
  result.residual = (s * vectorize(rho)).norm();
  result.degenerate = null_columns.size() > 1;
  result.state = std::move(rho);
  return result;
}

BoltzmannTrajectory propagate_boltzmann(const RealMatrix& rates, const Distribution& f0,
                                        const TimeGrid& grid) {
  grid.validate();
  if (rates.rows() != f0.dimension() || rates.cols() != f0.dimension()) {
    throw DimensionError("rate matrix and distribution dimensions differ");
  }
  const double dt = grid.spacing();
  BoltzmannTrajectory trajectory;
  trajectory.grid = grid;
  trajectory.states.reserve(grid.steps + 1);
  RealVector f = f0.values();
  trajectory.states.push_back(f);
  for (int k = 1; k <= grid.steps; ++k) {
    const RealVector k1 = boltzmann_rhs(rates, f);
    const RealVector k2 = boltzmann_rhs(rates, f + 0.5 * dt * k1);
    const RealVector k3 = boltzmann_rhs(rates, f + 0.5 * dt * k2);
    const RealVector k4 = boltzmann_rhs(rates, f + dt * k3);
    f += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!f.allFinite() || f.minCoeff() < -1e-12) {
      throw StepSizeError("occupation went negative at step " + std::to_string(k) +
                          "; use a finer time grid");
    }
    trajectory.states.push_back(f);
  }
  return trajectory;
}

double relaxation_time(const Superoperator& generator) {
  const double rate = spectral_radius(generator.matrix());
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

}  // namespace qfgr
