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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qfgr::cli;

struct CommonOptions {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* command, CommonOptions& options) {
  command->add_option("--config", options.config, "Scenario or search config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  command->add_option("--out-dir", options.out_dir,
                      "Output directory (default: $QFGR_OUT_DIR, then ./out)");
  command->add_option("--seed", options.seed,
                      "Override the random system seed (search: the master seed)");
}

fs::path out_dir(const CommonOptions& options) {
  if (!options.out_dir.empty()) return options.out_dir;
  if (const char* env = std::getenv("QFGR_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

Scenario scenario_with_overrides(const CommonOptions& options) {
  Scenario scenario = load_scenario(options.config);
  if (options.seed) {
    if (!scenario.system.random) {
      throw ConfigError("--seed needs a scenario with a seeded random system");
    }
    scenario.system.random->seed = *options.seed;
  }
  return scenario;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov and symmetrized golden-rule master-equation laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions options;
  std::optional<int> threads;

  auto* run = app.add_subcommand("run", "Propagate one scenario and write its trajectory");
  add_common(run, options);
  auto* compare = app.add_subcommand("compare", "Propagate conventional, qfgr and exact side by side");
  add_common(compare, options);
  auto* search_cmd = app.add_subcommand("search", "Search for positivity violations of the conventional generator");
  add_common(search_cmd, options);
  search_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* rates = app.add_subcommand("rates", "Dump rate tensors and the golden-rule matrix");
  add_common(rates, options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitConfig;
  }

  try {
    const fs::path out = out_dir(options);
    if (run->parsed()) {
      run_scenario(scenario_with_overrides(options), out, std::cout);
    } else if (compare->parsed()) {
      compare_scenario(scenario_with_overrides(options), out, std::cout);
    } else if (rates->parsed()) {
      dump_rates(scenario_with_overrides(options), out, std::cout);
    } else {
      qfgr::SearchConfig config = load_search_config(options.config);
      if (options.seed) config.master_seed = *options.seed;
      if (threads) config.threads = *threads;
      search(config, out, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qfgr::ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qfgr::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qfgr::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
