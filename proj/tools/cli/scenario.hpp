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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfgr/qfgr.hpp"

namespace qfgr::cli {

// Malformed or inconsistent configuration. Maps to exit status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RandomSystemRef {
  std::uint64_t seed = 0;
  int n = 2;
  double level_spacing = 1.0;
  double coupling_scale = 0.1;
};

struct SystemSource {
  double hbar = 1.0;
  DeltaKernel kernel;
  std::optional<RandomSystemRef> random;
  std::vector<double> energies;  // inline form
  Matrix interaction;            // inline form
};

enum class Rho0Kind { kMaximallyMixed, kPure, kRandom, kExplicit };

struct Rho0Source {
  Rho0Kind kind = Rho0Kind::kMaximallyMixed;
  int level = 0;
  std::uint64_t seed = 0;
  Matrix data;
};

struct Scenario {
  std::string name = "scenario";
  SystemSource system;
  GeneratorKind generator = GeneratorKind::kQfgrRates;
  bool include_coherent = true;
  Rho0Source rho0;
  double t0 = 0.0;
  double t1 = 1.0;
  std::optional<int> steps;  // default: 200 per 1/rate of the generator
  Method method = Method::kExpm;
  std::optional<std::vector<std::pair<int, int>>> elements;  // empty optional: all
};

Scenario parse_scenario(const nlohmann::json& document);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& scenario);

SystemSpec build_system(const Scenario& scenario);
DensityMatrix build_rho0(const Scenario& scenario, int n);
std::vector<std::pair<int, int>> requested_elements(const Scenario& scenario, int n);

SearchConfig parse_search_config(const nlohmann::json& document);
SearchConfig load_search_config(const std::filesystem::path& path);
nlohmann::json search_config_to_json(const SearchConfig& config);

// Complex matrices as {"re": rows, "im": rows}; a flat row-major array of
// length n*n is accepted for either part.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& value, const std::string& field);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace qfgr::cli
