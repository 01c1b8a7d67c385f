// Copyright 2026 The plsim Authors
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

#include "plsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "plsim/format.hpp"
#include "plsim/observables.hpp"

namespace plsim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int out = std::stoi(value, &used);
    if (used != value.size()) throw InvalidInput("");
    return out;
  } catch (const std::exception&) {
    throw InvalidInput("config: '" + key + "' expects an integer, got '" + value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const InvalidInput&) {
    throw InvalidInput("config: '" + key + "' expects a number, got '" + value + "'");
  }
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::gamma:
      return "gamma";
    case SweepParam::gamma_nn:
      return "gamma_nn";
    case SweepParam::beta_r:
      return "beta_r";
  }
  return "unknown";
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(item));
  }
  return out;
}

void apply_setting(RunConfig& cfg, std::string key, const std::string& raw) {
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw);
  if (key == "L") {
    cfg.model.L = parse_int(key, value);
  } else if (key == "kappa") {
    cfg.model.kappa = parse_real(key, value);
  } else if (key == "beta_r") {
    cfg.model.beta_r = parse_real(key, value);
  } else if (key == "gamma") {
    cfg.model.gamma = parse_real(key, value);
  } else if (key == "gamma_nn") {
    cfg.model.gamma_nn = parse_real(key, value);
  } else if (key == "boundary") {
    if (value != "open") throw InvalidInput("config: only boundary = open is supported");
  } else if (key == "alpha_ts") {
    cfg.alpha_ts = parse_real(key, value);
  } else if (key == "init") {
    if (value == "local") {
      cfg.init = InitKind::local;
    } else if (value == "homogeneous") {
      cfg.init = InitKind::homogeneous;
    } else if (value == "file") {
      cfg.init = InitKind::file;
    } else {
      throw InvalidInput("config: init must be local, homogeneous or file, got '" + value + "'");
    }
  } else if (key == "sites") {
    const auto comma = value.find(',');
    if (comma == std::string::npos) throw InvalidInput("config: sites expects 'i,j'");
    cfg.sites = std::pair{parse_int(key, trim(value.substr(0, comma))), parse_int(key, trim(value.substr(comma + 1)))};
  } else if (key == "state_file") {
    cfg.state_file = value;
  } else if (key == "t_final") {
    cfg.integrator.t_final = parse_real(key, value);
  } else if (key == "dt") {
    cfg.integrator.dt = parse_real(key, value);
  } else if (key == "sample_every") {
    cfg.integrator.sample_every = parse_int(key, value);
  } else if (key == "method") {
    if (value == "rk4") {
      cfg.integrator.method = Method::rk4;
    } else if (value == "expm") {
      cfg.integrator.method = Method::expm;
    } else {
      throw InvalidInput("config: method must be rk4 or expm, got '" + value + "'");
    }
  } else if (key == "t0") {
    cfg.t0 = parse_real(key, value);
  } else if (key == "out") {
    cfg.outputs.out_dir = value;
  } else if (key == "format") {
    if (value == "csv") {
      cfg.outputs.format = OutputFormat::csv;
    } else if (value == "json") {
      cfg.outputs.format = OutputFormat::json;
    } else {
      throw InvalidInput("config: format must be csv or json, got '" + value + "'");
    }
  } else if (key == "snapshot_times" || key == "times") {
    cfg.outputs.snapshot_times = parse_real_list(value);
  } else if (key == "param") {
    if (value == "gamma") {
      cfg.sweep_param = SweepParam::gamma;
    } else if (value == "gamma_nn" || value == "gamma-nn") {
      cfg.sweep_param = SweepParam::gamma_nn;
    } else if (value == "beta_r" || value == "beta-r") {
      cfg.sweep_param = SweepParam::beta_r;
    } else {
      throw InvalidInput("config: param must be gamma, gamma_nn or beta_r, got '" + value + "'");
    }
  } else if (key == "values") {
    cfg.sweep_values = parse_real_list(value);
  } else if (key == "jobs") {
    cfg.jobs = parse_int(key, value);
  } else if (key == "threshold") {
    cfg.oracle_threshold = parse_real(key, value);
  } else {
    throw InvalidInput("config: unknown key '" + key + "'");
  }
}

void read_config(std::istream& in, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected 'key = value'");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void load_config(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path.string() + "'");
  read_config(in, cfg);
}

void validate_config(const RunConfig& cfg) {
  validate_params(cfg.model);
  validate_config(cfg.integrator);
  for (double t : cfg.outputs.snapshot_times)
    if (!(t >= 0 && t <= cfg.integrator.t_final))
      throw InvalidInput("snapshot time " + format_double(t) + " outside [0, t_final]");
  if (cfg.jobs < 1) throw InvalidInput("jobs must be >= 1");
  if (!(cfg.t0 >= 0) || !std::isfinite(cfg.t0)) throw InvalidInput("t0 must be >= 0 and finite");
  if (!(cfg.oracle_threshold > 0)) throw InvalidInput("threshold must be positive");
  for (double v : cfg.sweep_values)
    if (!std::isfinite(v)) throw InvalidInput("sweep values must be finite");
  if (cfg.init == InitKind::local && cfg.sites) {
    const auto [i, j] = *cfg.sites;
    if (i < 0 || j < 0 || i >= cfg.model.L || j >= cfg.model.L || i == j)
      throw InvalidInput("sites must be two distinct indices in [0, L)");
  }
  if (cfg.init == InitKind::homogeneous && !(cfg.alpha_ts >= 0 && cfg.alpha_ts <= 1))
    throw InvalidInput("alpha_ts out of range [0, 1]");
  if (cfg.init == InitKind::file && cfg.state_file.empty())
    throw InvalidInput("init = file requires state_file");
}

InitialStateSpec initial_spec(const RunConfig& cfg) {
  switch (cfg.init) {
    case InitKind::local: {
      const auto [i, j] = cfg.sites.value_or(central_pair(cfg.model.L));
      return LocalPairSpec{i, j};
    }
    case InitKind::homogeneous:
      return HomogeneousSpec{cfg.alpha_ts};
    case InitKind::file:
      return FileSpec{cfg.state_file};
  }
  throw InvalidInput("unknown init kind");
}

std::vector<std::pair<std::string, std::string>> describe_config(const RunConfig& cfg) {
  const auto& m = cfg.model;
  const auto& ic = cfg.integrator;
  return {
      {"L", std::to_string(m.L)},
      {"kappa", format_double(m.kappa)},
      {"beta_r", format_double(m.beta_r)},
      {"gamma", format_double(m.gamma)},
      {"gamma_nn", format_double(m.gamma_nn)},
      {"boundary", to_string(m.boundary)},
      {"init", describe(initial_spec(cfg))},
      {"method", to_string(ic.method)},
      {"dt", format_double(ic.dt)},
      {"dt_used", format_double(make_schedule(ic.t_final, ic.dt).dt)},
      {"t_final", format_double(ic.t_final)},
      {"sample_every", std::to_string(ic.sample_every)},
      {"g2_density_floor", format_double(kDensityFloor)},
  };
}

}  // namespace plsim
