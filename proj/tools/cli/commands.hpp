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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "scenario.hpp"

namespace qfgr::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit statuses of the qfgr tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// %.17g
std::string format_number(double value);

struct RunSummary {
  double final_trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  double purity_min = 0.0;
  double purity_max = 0.0;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
};

// Resolved grid: explicit steps or the default density for the generator rate.
TimeGrid resolve_grid(const Scenario& scenario, double rate);

RunSummary run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                        std::ostream& log);

std::filesystem::path compare_scenario(const Scenario& scenario,
                                       const std::filesystem::path& out_dir, std::ostream& log);

struct SearchOutcome {
  ViolationReport report;
  bool found = false;
  std::filesystem::path report_path;
  std::filesystem::path witness_path;  // empty when nothing was found
};

// Scenario replaying instance `report` of a search under the conventional
// generator with the coherent term.
Scenario witness_scenario(const SearchConfig& config, const ViolationReport& report);

SearchOutcome search(const SearchConfig& config, const std::filesystem::path& out_dir,
                     std::ostream& log);

struct RatesOutput {
  std::filesystem::path rates_path;
  std::filesystem::path fgr_path;
  std::size_t nonzero_entries = 0;
};

RatesOutput dump_rates(const Scenario& scenario, const std::filesystem::path& out_dir,
                       std::ostream& log);

}  // namespace qfgr::cli
