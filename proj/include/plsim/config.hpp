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

#ifndef PLSIM_CONFIG_HPP
#define PLSIM_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plsim/initial_states.hpp"
#include "plsim/lattice.hpp"
#include "plsim/propagation.hpp"

namespace plsim {

enum class OutputFormat { csv, json };
enum class SweepParam { gamma, gamma_nn, beta_r };
enum class InitKind { local, homogeneous, file };

std::string to_string(OutputFormat f);
std::string to_string(SweepParam p);

struct OutputConfig {
  std::filesystem::path out_dir = "out";
  std::vector<double> snapshot_times;
  OutputFormat format = OutputFormat::csv;
};

/// Everything a subcommand needs. Built from defaults, then a key = value
/// config file, then command-line flags, each layer overriding the last.
struct RunConfig {
  Params model;
  InitKind init = InitKind::local;
  std::optional<std::pair<int, int>> sites;  // default: central pair
  double alpha_ts = 0.9;
  std::filesystem::path state_file;
  IntegratorConfig integrator;
  OutputConfig outputs;

  double t0 = 1.0;  // sweep readout time
  SweepParam sweep_param = SweepParam::gamma;
  std::vector<double> sweep_values;
  int jobs = 1;

  double oracle_threshold = 1e-5;
  bool oracle_corrupt_sign = false;
};

/// Sets one key (dashes and underscores are interchangeable). Throws InvalidInput
/// for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, std::string key, const std::string& value);

/// Flat "key = value" lines, '#' starts a comment.
void read_config(std::istream& in, RunConfig& cfg);
void load_config(const std::filesystem::path& path, RunConfig& cfg);

/// Cross-field checks: parameter invariants, snapshot times inside [0, t_final], sites in range.
void validate_config(const RunConfig& cfg);

InitialStateSpec initial_spec(const RunConfig& cfg);

std::vector<double> parse_real_list(const std::string& text);

/// One "key=value" metadata record per setting, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe_config(const RunConfig& cfg);

}  // namespace plsim

#endif  // PLSIM_CONFIG_HPP
