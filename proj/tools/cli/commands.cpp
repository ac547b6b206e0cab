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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include <Eigen/Core>

namespace qfgr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path temporary = path;
  temporary += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + temporary.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(temporary);
      throw std::runtime_error("write failed for '" + temporary.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temporary, path, ec);
  if (ec) {
    fs::remove(temporary);
    throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

std::string element_columns(const std::vector<std::pair<int, int>>& elements,
                            const std::string& suffix) {
  std::string header;
  for (const auto& [a, b] : elements) {
    const std::string base = "rho_" + std::to_string(a) + "_" + std::to_string(b);
    header += "," + base + "_re" + suffix + "," + base + "_im" + suffix;
  }
  return header;
}

std::string diagnostic_columns(const std::string& suffix) {
  return "trace_re" + suffix + ",herm_defect" + suffix + ",min_eig" + suffix + ",purity" + suffix;
}

void append_row(std::string& line, const SnapshotDiagnostics& d, const Matrix& rho,
                const std::vector<std::pair<int, int>>& elements) {
  line += "," + format_number(d.trace_re) + "," + format_number(d.hermiticity_defect) + "," +
          format_number(d.min_eigenvalue) + "," + format_number(d.purity);
  for (const auto& [a, b] : elements) {
    line += "," + format_number(rho(a, b).real()) + "," + format_number(rho(a, b).imag());
  }
}

std::string eigen_version() {
  return std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

json manifest_for(const Scenario& resolved, const SystemSpec& spec, const std::string& command,
                  const std::vector<fs::path>& outputs) {
  json document = scenario_to_json(resolved);
  json files = json::array();
  for (const auto& p : outputs) files.push_back(p.filename().string());
  document["manifest"] = {{"tool", "qfgr"},
                          {"version", kVersion},
                          {"eigen", eigen_version()},
                          {"command", command},
                          {"outputs", std::move(files)}};
  document["resolved"] = {{"energies", spec.energies()},
                          {"interaction", matrix_to_json(spec.interaction())}};
  return document;
}

// Boltzmann rate matrix M with df/dt = M f.
RealMatrix boltzmann_matrix(const RealMatrix& rates) {
  RealMatrix m = rates;
  for (Eigen::Index l = 0; l < rates.rows(); ++l) m(l, l) -= rates.col(l).sum();
  return m;
}

Trajectory boltzmann_as_trajectory(const BoltzmannTrajectory& b) {
  Trajectory t;
  t.grid = b.grid;
  for (const RealVector& f : b.states) {
    Matrix rho = Matrix::Zero(f.size(), f.size());
    for (Eigen::Index l = 0; l < f.size(); ++l) rho(l, l) = f(l);
    t.diagnostics.push_back(diagnose(rho));
    t.states.push_back(std::move(rho));
  }
  return t;
}

}  // namespace

TimeGrid resolve_grid(const Scenario& scenario, double rate) {
  if (scenario.steps) return TimeGrid{scenario.t0, scenario.t1, *scenario.steps};
  return TimeGrid::with_default_steps(scenario.t0, scenario.t1, rate);
}

RunSummary run_scenario(const Scenario& scenario, const fs::path& out_dir, std::ostream& log) {
  const SystemSpec spec = build_system(scenario);
  const int n = spec.dimension();
  const DensityMatrix rho0 = build_rho0(scenario, n);
  const auto elements = requested_elements(scenario, n);

  Trajectory trajectory;
  Scenario resolved = scenario;
  if (scenario.generator == GeneratorKind::kBoltzmann) {
    const Matrix& data = rho0.data();
    const Matrix off_diagonal = data - Matrix(data.diagonal().asDiagonal());
    if (off_diagonal.cwiseAbs().maxCoeff() > DensityMatrix::kTolerance) {
      throw ConfigError("generator 'boltzmann' needs a diagonal rho0");
    }
    const RealMatrix rates = fgr_rates(spec);
    const RealMatrix m = boltzmann_matrix(rates);
    const TimeGrid grid = resolve_grid(scenario, spectral_radius(m.cast<Complex>()));
    resolved.steps = grid.steps;
    trajectory = boltzmann_as_trajectory(
        propagate_boltzmann(rates, Distribution::from_density(rho0), grid));
  } else {
    const Superoperator generator =
        build_generator(spec, scenario.generator, scenario.include_coherent);
    const TimeGrid grid = resolve_grid(scenario, spectral_radius(generator.matrix()));
    resolved.steps = grid.steps;
    trajectory = propagate(generator, rho0, grid, scenario.method);
  }

  std::string csv = "t," + diagnostic_columns("") + element_columns(elements, "") + "\n";
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    std::string line = format_number(trajectory.grid.time(static_cast<int>(k)));
    append_row(line, trajectory.diagnostics[k], trajectory.states[k], elements);
    csv += line + "\n";
  }

  RunSummary summary;
  summary.csv_path = out_dir / (scenario.name + ".trajectory.csv");
  summary.manifest_path = out_dir / (scenario.name + ".manifest.json");
  const json manifest = manifest_for(resolved, spec, "run", {summary.csv_path});
  write_file_atomic(summary.csv_path, csv);
  write_file_atomic(summary.manifest_path, manifest.dump(2) + "\n");

  summary.final_trace_defect = std::abs(trajectory.diagnostics.back().trace_re - 1.0);
  summary.min_eigenvalue = positivity_scan(trajectory).min_eigenvalue;
  summary.purity_min = summary.purity_max = trajectory.diagnostics.front().purity;
  for (const auto& d : trajectory.diagnostics) {
    summary.purity_min = std::min(summary.purity_min, d.purity);
    summary.purity_max = std::max(summary.purity_max, d.purity);
  }
  log << "scenario " << scenario.name << " (" << to_string(scenario.generator) << ", N=" << n
      << ", " << trajectory.grid.steps << " steps)\n"
      << "  final trace defect: " << format_number(summary.final_trace_defect) << "\n"
      << "  min eigenvalue:     " << format_number(summary.min_eigenvalue) << "\n"
      << "  purity range:       [" << format_number(summary.purity_min) << ", "
      << format_number(summary.purity_max) << "]\n"
      << "  wrote " << summary.csv_path.string() << "\n";
  return summary;
}

fs::path compare_scenario(const Scenario& scenario, const fs::path& out_dir, std::ostream& log) {
  if (scenario.generator == GeneratorKind::kBoltzmann) {
    throw ConfigError("compare propagates density matrices; generator 'boltzmann' is not supported");
  }
  const SystemSpec spec = build_system(scenario);
  const int n = spec.dimension();
  const DensityMatrix rho0 = build_rho0(scenario, n);
  const auto elements = requested_elements(scenario, n);

  struct Lane {
    std::string suffix;
    Superoperator generator;
  };
  std::vector<Lane> lanes = {
      {"_conventional", build_generator(spec, GeneratorKind::kConventional, scenario.include_coherent)},
      {"_qfgr", build_generator(spec, GeneratorKind::kQfgrRates, scenario.include_coherent)},
      {"_exact", build_generator(spec, GeneratorKind::kExact, true)},
  };
  double rate = 0.0;
  for (const Lane& lane : lanes) rate = std::max(rate, spectral_radius(lane.generator.matrix()));
  const TimeGrid grid = resolve_grid(scenario, rate);
  Scenario resolved = scenario;
  resolved.steps = grid.steps;

  std::vector<Trajectory> trajectories;
  for (const Lane& lane : lanes) {
    trajectories.push_back(propagate(lane.generator, rho0, grid, scenario.method));
  }

  std::string csv = "t";
  for (const Lane& lane : lanes) {
    csv += "," + diagnostic_columns(lane.suffix) + element_columns(elements, lane.suffix);
  }
  csv += ",diff_conventional_qfgr,diff_conventional_exact,diff_qfgr_exact\n";
  const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k <= grid.steps; ++k) {
    std::string line = format_number(grid.time(k));
    for (const Trajectory& t : trajectories) append_row(line, t.diagnostics[k], t.states[k], elements);
    for (const auto& [i, j] : pairs) {
      const double diff = (trajectories[i].states[k] - trajectories[j].states[k]).cwiseAbs().maxCoeff();
      line += "," + format_number(diff);
    }
    csv += line + "\n";
  }

  const fs::path csv_path = out_dir / (scenario.name + ".compare.csv");
  const fs::path manifest_path = out_dir / (scenario.name + ".compare.manifest.json");
  write_file_atomic(csv_path, csv);
  write_file_atomic(manifest_path, manifest_for(resolved, spec, "compare", {csv_path}).dump(2) + "\n");
  log << "compared conventional, qfgr-rates and exact dynamics for " << scenario.name << " ("
      << grid.steps << " steps)\n  wrote " << csv_path.string() << "\n";
  return csv_path;
}

Scenario witness_scenario(const SearchConfig& config, const ViolationReport& report) {
  Scenario s;
  s.name = "markov-violation-witness";
  s.system.kernel = config.kernel;
  s.system.random = RandomSystemRef{report.system_seed, report.n, config.level_spacing,
                                    config.coupling_scale};
  s.generator = GeneratorKind::kConventional;
  s.include_coherent = true;
  s.rho0.kind = Rho0Kind::kRandom;
  s.rho0.seed = report.rho_seed;
  s.t0 = 0.0;
  s.t1 = report.horizon;
  s.steps = report.steps;
  s.method = Method::kExpm;
  return s;
}

SearchOutcome search(const SearchConfig& config, const fs::path& out_dir, std::ostream& log) {
  SearchOutcome outcome;
  outcome.report = search_positivity_violation(config);
  outcome.found = outcome.report.violated();
  const ViolationReport& r = outcome.report;

  json report = {{"found", outcome.found},
                 {"config", search_config_to_json(config)},
                 {"report",
                  {{"instance", r.instance},
                   {"system_seed", r.system_seed},
                   {"n", r.n},
                   {"rho_seed", r.rho_seed},
                   {"horizon", r.horizon},
                   {"steps", r.steps},
                   {"worst_time", r.worst_time},
                   {"worst_min_eigenvalue", r.worst_min_eigenvalue}}}};
  outcome.report_path = out_dir / "violation_report.json";
  if (outcome.found) {
    outcome.witness_path = out_dir / "witness.scenario.json";
    report["witness"] = outcome.witness_path.filename().string();
    write_file_atomic(outcome.witness_path,
                      scenario_to_json(witness_scenario(config, r)).dump(2) + "\n");
  } else {
    report["witness"] = nullptr;
  }
  write_file_atomic(outcome.report_path, report.dump(2) + "\n");

  if (outcome.found) {
    log << "violation found: instance " << r.instance << " (N=" << r.n << "), min eigenvalue "
        << format_number(r.worst_min_eigenvalue) << " at t=" << format_number(r.worst_time)
        << "\n  witness: " << outcome.witness_path.string() << "\n";
  } else {
    log << "no violation found in " << config.budget << " instances; least margin "
        << format_number(r.worst_min_eigenvalue) << "\n";
  }
  return outcome;
}

RatesOutput dump_rates(const Scenario& scenario, const fs::path& out_dir, std::ostream& log) {
  const SystemSpec spec = build_system(scenario);
  const int n = spec.dimension();
  RatesOutput output;
  std::string csv = "flavor,l1,l2,m1,m2,re,im\n";
  for (const RateTensor& rates : {conventional_rates(spec), symmetrized_rates(spec)}) {
    const std::string flavor(to_string(rates.flavor()));
    for (int l1 = 0; l1 < n; ++l1) {
      for (int l2 = 0; l2 < n; ++l2) {
        for (int m1 = 0; m1 < n; ++m1) {
          for (int m2 = 0; m2 < n; ++m2) {
            const Complex p = rates(l1, l2, m1, m2);
            if (p == Complex(0.0, 0.0)) continue;
            ++output.nonzero_entries;
            csv += flavor + "," + std::to_string(l1) + "," + std::to_string(l2) + "," +
                   std::to_string(m1) + "," + std::to_string(m2) + "," + format_number(p.real()) +
                   "," + format_number(p.imag()) + "\n";
          }
        }
      }
    }
  }
  const RealMatrix fgr = fgr_rates(spec);
  std::string fgr_csv = "l";
  for (int m = 0; m < n; ++m) fgr_csv += ",P_" + std::to_string(m);
  fgr_csv += "\n";
  for (int l = 0; l < n; ++l) {
    fgr_csv += std::to_string(l);
    for (int m = 0; m < n; ++m) fgr_csv += "," + format_number(fgr(l, m));
    fgr_csv += "\n";
  }
  output.rates_path = out_dir / (scenario.name + ".rates.csv");
  output.fgr_path = out_dir / (scenario.name + ".fgr.csv");
  write_file_atomic(output.rates_path, csv);
  write_file_atomic(output.fgr_path, fgr_csv);
  log << "wrote " << output.nonzero_entries << " nonzero rate entries to "
      << output.rates_path.string() << "\n  and the golden-rule matrix to "
      << output.fgr_path.string() << "\n";
  return output;
}

}  // namespace qfgr::cli
