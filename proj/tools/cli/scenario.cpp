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

#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qfgr::cli {

using nlohmann::json;

namespace {

const json& require(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) throw ConfigError("field '" + path + "': expected an object");
  const auto it = object.find(key);
  if (it == object.end()) throw ConfigError("missing field '" + path + key + "'");
  return *it;
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) throw ConfigError("field '" + field + "': expected a number");
  return value.get<double>();
}

int integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) throw ConfigError("field '" + field + "': expected an integer");
  return value.get<int>();
}

std::uint64_t seed_value(const json& value, const std::string& field) {
  if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() &&
                                     value.get<long long>() < 0)) {
    throw ConfigError("field '" + field + "': expected a nonnegative integer seed");
  }
  return value.get<std::uint64_t>();
}

std::string text(const json& value, const std::string& field) {
  if (!value.is_string()) throw ConfigError("field '" + field + "': expected a string");
  return value.get<std::string>();
}

double optional_number(const json& object, const std::string& key, const std::string& path,
                       double fallback) {
  const auto it = object.find(key);
  return it == object.end() ? fallback : number(*it, path + key);
}

std::vector<double> real_rows(const json& value, const std::string& field, Eigen::Index& rows,
                              Eigen::Index& cols) {
  if (!value.is_array() || value.empty()) throw ConfigError("field '" + field + "': expected an array");
  std::vector<double> flat;
  if (value.front().is_array()) {
    rows = static_cast<Eigen::Index>(value.size());
    cols = static_cast<Eigen::Index>(value.front().size());
    for (std::size_t r = 0; r < value.size(); ++r) {
      const json& row = value[r];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        throw ConfigError("field '" + field + "': ragged matrix rows");
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        flat.push_back(number(row[c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
    }
  } else {
    for (std::size_t i = 0; i < value.size(); ++i) {
      flat.push_back(number(value[i], field + "[" + std::to_string(i) + "]"));
    }
    rows = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    cols = rows;
    if (rows * cols != static_cast<Eigen::Index>(flat.size())) {
      throw ConfigError("field '" + field + "': flat matrix length is not a perfect square");
    }
  }
  return flat;
}

DeltaKernel parse_kernel(const json& value, const std::string& path) {
  DeltaKernel kernel;
  try {
    kernel.mode = kernel_mode_from_string(text(require(value, "mode", path), path + "mode"));
  } catch (const ParameterError& e) {
    throw ConfigError("field '" + path + "mode': " + e.what());
  }
  kernel.eta = number(require(value, "eta", path), path + "eta");
  if (!(kernel.eta > 0.0)) throw ConfigError("field '" + path + "eta': must be positive");
  return kernel;
}

json kernel_to_json(const DeltaKernel& kernel) {
  return {{"mode", std::string(to_string(kernel.mode))}, {"eta", kernel.eta}};
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row_re = json::array();
    json row_im = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& value, const std::string& field) {
  Eigen::Index rows = 0, cols = 0, rows_im = 0, cols_im = 0;
  const std::vector<double> re = real_rows(require(value, "re", field + "."), field + ".re", rows, cols);
  const std::vector<double> im = real_rows(require(value, "im", field + "."), field + ".im", rows_im, cols_im);
  if (rows != rows_im || cols != cols_im || rows != cols) {
    throw ConfigError("field '" + field + "': re and im must be square and the same shape");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(re[r * cols + c], im[r * cols + c]);
  }
  return m;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in '" + path.string() + "': " + e.what());
  }
}

Scenario parse_scenario(const json& document) {
  if (!document.is_object()) throw ConfigError("scenario must be a JSON object");
  Scenario s;
  if (const auto it = document.find("name"); it != document.end()) s.name = text(*it, "name");
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("field 'name': must be a nonempty file-name-safe string");
  }

  const json& system = require(document, "system", "");
  s.system.hbar = optional_number(system, "hbar", "system.", 1.0);
  s.system.kernel = parse_kernel(require(system, "kernel", "system."), "system.kernel.");
  if (const auto it = system.find("random"); it != system.end()) {
    RandomSystemRef ref;
    ref.seed = seed_value(require(*it, "seed", "system.random."), "system.random.seed");
    ref.n = integer(require(*it, "n", "system.random."), "system.random.n");
    ref.level_spacing = optional_number(*it, "level_spacing", "system.random.", 1.0);
    ref.coupling_scale = number(require(*it, "coupling_scale", "system.random."),
                                "system.random.coupling_scale");
    s.system.random = ref;
  } else {
    const json& energies = require(system, "energies", "system.");
    if (!energies.is_array()) throw ConfigError("field 'system.energies': expected an array");
    for (std::size_t i = 0; i < energies.size(); ++i) {
      s.system.energies.push_back(number(energies[i], "system.energies[" + std::to_string(i) + "]"));
    }
    s.system.interaction = matrix_from_json(require(system, "interaction", "system."),
                                            "system.interaction");
  }

  try {
    s.generator = generator_kind_from_string(text(require(document, "generator", ""), "generator"));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("field 'generator': ") + e.what());
  }
  if (const auto it = document.find("include_coherent"); it != document.end()) {
    if (!it->is_boolean()) throw ConfigError("field 'include_coherent': expected a boolean");
    s.include_coherent = it->get<bool>();
  }

  const json& rho0 = require(document, "rho0", "");
  const std::string kind = text(require(rho0, "kind", "rho0."), "rho0.kind");
  if (kind == "maximally-mixed") {
    s.rho0.kind = Rho0Kind::kMaximallyMixed;
  } else if (kind == "pure") {
    s.rho0.kind = Rho0Kind::kPure;
    s.rho0.level = integer(require(rho0, "level", "rho0."), "rho0.level");
  } else if (kind == "random") {
    s.rho0.kind = Rho0Kind::kRandom;
    s.rho0.seed = seed_value(require(rho0, "seed", "rho0."), "rho0.seed");
  } else if (kind == "explicit") {
    s.rho0.kind = Rho0Kind::kExplicit;
    s.rho0.data = matrix_from_json(rho0, "rho0");
  } else {
    throw ConfigError("field 'rho0.kind': unknown kind '" + kind + "'");
  }

  const json& grid = require(document, "grid", "");
  s.t0 = optional_number(grid, "t0", "grid.", 0.0);
  s.t1 = number(require(grid, "t1", "grid."), "grid.t1");
  if (!(s.t1 > s.t0)) throw ConfigError("field 'grid.t1': must exceed grid.t0");
  if (const auto it = grid.find("steps"); it != grid.end()) {
    s.steps = integer(*it, "grid.steps");
    if (*s.steps < 1) throw ConfigError("field 'grid.steps': must be at least 1");
  }

  if (const auto it = document.find("method"); it != document.end()) {
    try {
      s.method = method_from_string(text(*it, "method"));
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("field 'method': ") + e.what());
    }
  }

  if (const auto out = document.find("outputs"); out != document.end()) {
    if (const auto el = out->find("elements"); el != out->end() && !(el->is_string() && *el == "all")) {
      if (!el->is_array()) throw ConfigError("field 'outputs.elements': expected \"all\" or [[i, j], ...]");
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 0; i < el->size(); ++i) {
        const json& p = (*el)[i];
        const std::string field = "outputs.elements[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 2) throw ConfigError("field '" + field + "': expected [i, j]");
        pairs.emplace_back(integer(p[0], field), integer(p[1], field));
      }
      s.elements = std::move(pairs);
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path));
}

json scenario_to_json(const Scenario& s) {
  json system = {{"hbar", s.system.hbar}, {"kernel", kernel_to_json(s.system.kernel)}};
  if (s.system.random) {
    system["random"] = {{"seed", s.system.random->seed},
                        {"n", s.system.random->n},
                        {"level_spacing", s.system.random->level_spacing},
                        {"coupling_scale", s.system.random->coupling_scale}};
  } else {
    system["energies"] = s.system.energies;
    system["interaction"] = matrix_to_json(s.system.interaction);
  }
  json rho0;
  switch (s.rho0.kind) {
    case Rho0Kind::kMaximallyMixed: rho0 = {{"kind", "maximally-mixed"}}; break;
    case Rho0Kind::kPure: rho0 = {{"kind", "pure"}, {"level", s.rho0.level}}; break;
    case Rho0Kind::kRandom: rho0 = {{"kind", "random"}, {"seed", s.rho0.seed}}; break;
    case Rho0Kind::kExplicit:
      rho0 = matrix_to_json(s.rho0.data);
      rho0["kind"] = "explicit";
      break;
  }
  json grid = {{"t0", s.t0}, {"t1", s.t1}};
  if (s.steps) grid["steps"] = *s.steps;
  json document = {{"name", s.name},
                   {"system", std::move(system)},
                   {"generator", std::string(to_string(s.generator))},
                   {"include_coherent", s.include_coherent},
                   {"rho0", std::move(rho0)},
                   {"grid", std::move(grid)},
                   {"method", std::string(to_string(s.method))}};
  if (s.elements) {
    json pairs = json::array();
    for (const auto& [a, b] : *s.elements) pairs.push_back({a, b});
    document["outputs"] = {{"elements", std::move(pairs)}};
  } else {
    document["outputs"] = {{"elements", "all"}};
  }
  return document;
}

SystemSpec build_system(const Scenario& s) {
  try {
    if (s.system.random) {
      const RandomSystemRef& r = *s.system.random;
      return random_system(r.seed, r.n, r.level_spacing, r.coupling_scale, s.system.kernel,
                           s.system.hbar);
    }
    return SystemSpec(s.system.energies, s.system.interaction, s.system.kernel, s.system.hbar);
  } catch (const Error& e) {
    throw ConfigError(std::string("field 'system': ") + e.what());
  }
}

DensityMatrix build_rho0(const Scenario& s, int n) {
  try {
    switch (s.rho0.kind) {
      case Rho0Kind::kMaximallyMixed: return DensityMatrix::maximally_mixed(n);
      case Rho0Kind::kPure: return DensityMatrix::pure_level(n, s.rho0.level);
      case Rho0Kind::kRandom: return random_density(s.rho0.seed, n);
      case Rho0Kind::kExplicit:
        if (s.rho0.data.rows() != n) throw DimensionError("explicit rho0 has the wrong dimension");
        return DensityMatrix(s.rho0.data);
    }
  } catch (const Error& e) {
    throw ConfigError(std::string("field 'rho0': ") + e.what());
  }
  throw ConfigError("field 'rho0': unsupported kind");
}

std::vector<std::pair<int, int>> requested_elements(const Scenario& s, int n) {
  if (!s.elements) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) all.emplace_back(a, b);
    }
    return all;
  }
  for (const auto& [a, b] : *s.elements) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ConfigError("field 'outputs.elements': index out of range for N=" + std::to_string(n));
    }
  }
  return *s.elements;
}

SearchConfig parse_search_config(const json& document) {
  if (!document.is_object()) throw ConfigError("search config must be a JSON object");
  SearchConfig c;
  auto maybe_int = [&](const char* key, int& target) {
    if (const auto it = document.find(key); it != document.end()) target = integer(*it, key);
  };
  auto maybe_number = [&](const char* key, double& target) {
    if (const auto it = document.find(key); it != document.end()) target = number(*it, key);
  };
  if (const auto it = document.find("master_seed"); it != document.end()) {
    c.master_seed = seed_value(*it, "master_seed");
  }
  maybe_int("budget", c.budget);
  maybe_int("n_min", c.n_min);
  maybe_int("n_max", c.n_max);
  maybe_number("level_spacing", c.level_spacing);
  maybe_number("coupling_scale", c.coupling_scale);
  maybe_number("relaxation_times", c.relaxation_times);
  maybe_int("steps", c.steps);
  maybe_int("threads", c.threads);
  if (const auto it = document.find("kernel"); it != document.end()) c.kernel = parse_kernel(*it, "kernel.");
  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid search config: ") + e.what());
  }
  return c;
}

SearchConfig load_search_config(const std::filesystem::path& path) {
  return parse_search_config(read_json_file(path));
}

json search_config_to_json(const SearchConfig& c) {
  // No threads field: reports must match across thread counts.
  return {{"master_seed", c.master_seed},   {"budget", c.budget},
          {"n_min", c.n_min},               {"n_max", c.n_max},
          {"level_spacing", c.level_spacing}, {"coupling_scale", c.coupling_scale},
          {"kernel", kernel_to_json(c.kernel)}, {"relaxation_times", c.relaxation_times},
          {"steps", c.steps}};
}

}  // namespace qfgr::cli
