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

// plsim: lossy photonic-lattice emulation of two interacting bosons.
//
//   plsim run      --init local --gamma 10 --out out/
//   plsim sweep    --param gamma --values 0,2,4 --t0 1 --jobs 4
//   plsim oracle   --L 5 --gamma 2 --t-final 2
//   plsim snapshot --init homogeneous --gamma 10 --times 0,1,3

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plsim/commands.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

// Flags shared by every subcommand; each maps onto a config-file key.
const std::vector<FlagSpec> kModelFlags{
    {"--L", "L", "number of 1D lattice sites (grid is L x L)"},
    {"--kappa", "kappa", "coupling between neighbouring waveguides"},
    {"--beta-r", "beta_r", "real on-site nonlinearity"},
    {"--gamma", "gamma", "on-site two-body loss rate"},
    {"--gamma-nn", "gamma_nn", "nearest-neighbour two-body loss rate"},
    {"--init", "init", "initial state: local | homogeneous | file"},
    {"--sites", "sites", "sites of the local pair, 'i,j' (default: central pair)"},
    {"--alpha-ts", "alpha_ts", "two-site weight of the homogeneous state, in [0, 1]"},
    {"--state-file", "state_file", "state file for --init file"},
    {"--t-final", "t_final", "final time (units of 1/kappa when kappa = 1)"},
    {"--dt", "dt", "integration step"},
    {"--sample-every", "sample_every", "record every k-th step"},
    {"--method", "method", "integrator: rk4 | expm"},
    {"--out", "out", "output directory"},
    {"--format", "format", "output format: csv | json"},
};

struct Subcommand {
  CLI::App* app;
  std::string config_path;
  std::map<std::string, std::string> values;  // key -> raw flag value
  std::map<std::string, CLI::Option*> options;
  bool corrupt_sign = false;
};

void add_flag(Subcommand& sub, const char* flag, const char* key, const char* help) {
  sub.options[key] = sub.app->add_option(flag, sub.values[key], help);
}

plsim::RunConfig resolve(Subcommand& sub) {
  plsim::RunConfig cfg;
  if (!sub.config_path.empty()) plsim::load_config(sub.config_path, cfg);
  for (const auto& [key, opt] : sub.options)
    if (opt->count() > 0) plsim::apply_setting(cfg, key, sub.values[key]);
  cfg.oracle_corrupt_sign = sub.corrupt_sign;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic-lattice simulator for two bosons with two-body dissipation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("plsim ") + plsim::kVersion);

  std::map<std::string, Subcommand> subs;
  auto make = [&](const std::string& name, const std::string& help) -> Subcommand& {
    Subcommand& sub = subs[name];
    sub.app = app.add_subcommand(name, help);
    sub.app->add_option("--config", sub.config_path, "key = value config file; flags override it");
    for (const auto& f : kModelFlags) add_flag(sub, f.flag, f.key, f.help);
    return sub;
  };

  auto& run = make("run", "evolve one configuration and write the observable time series");
  add_flag(run, "--snapshot-times", "snapshot_times", "comma-separated times for G2/g2/intensity matrices");

  auto& sweep = make("sweep", "g2_avg and n_tot at t0 for a list of parameter values");
  add_flag(sweep, "--param", "param", "swept parameter: gamma | gamma_nn | beta_r");
  add_flag(sweep, "--values", "values", "comma-separated parameter values");
  add_flag(sweep, "--t0", "t0", "readout time");
  add_flag(sweep, "--jobs", "jobs", "worker threads");

  auto& oracle = make("oracle", "check the grid evolution against the master equation");
  add_flag(oracle, "--threshold", "threshold", "maximum allowed deviation");
  oracle.app->add_flag("--corrupt-sign", oracle.corrupt_sign, "test hook: flip the oracle's coherent sign")
      ->group("");

  auto& snapshot = make("snapshot", "G2, g2 and intensity matrices at the requested times");
  add_flag(snapshot, "--times", "snapshot_times", "comma-separated snapshot times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? plsim::kExitOk : plsim::kExitConfigError;
  }

  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    plsim::RunConfig cfg;
    try {
      cfg = resolve(sub);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return plsim::kExitConfigError;
    }
    if (name == "run") return plsim::cmd_run(cfg, std::cerr);
    if (name == "sweep") return plsim::cmd_sweep(cfg, std::cerr);
    if (name == "oracle") return plsim::cmd_oracle(cfg, std::cout);
    if (name == "snapshot") return plsim::cmd_snapshot(cfg, std::cerr);
  }
  return plsim::kExitConfigError;
}
