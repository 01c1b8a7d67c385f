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

#ifndef PLSIM_COMMANDS_HPP
#define PLSIM_COMMANDS_HPP

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "plsim/config.hpp"
#include "plsim/output.hpp"

namespace plsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitNumericalInstability = 2,
  kExitEquivalenceFailure = 3,
};

/// Fraction of the dissipation-free g2_avg below which the sweep metadata calls a value "almost zero".
inline constexpr double kAlmostZeroFraction = 0.1;

class SweepFailure : public NumericalInstability {
 public:
  SweepFailure(std::size_t index, const std::string& what)
      : NumericalInstability("sweep point " + std::to_string(index) + " failed: " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Initial grid for `cfg`; file states that needed renormalization are reported on `log`.
Grid build_initial_state(const RunConfig& cfg, std::ostream& log);

/// Observables at every sample of a trajectory.
std::vector<ObservableRecord<double>> observe_trajectory(const Trajectory<double>& traj);

Params with_sweep_value(Params p, SweepParam param, double value);

/// One evolution per value up to cfg.t0, spread over cfg.jobs threads; rows follow input order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, std::ostream& log);

int cmd_run(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_oracle(const RunConfig& cfg, std::ostream& log);
int cmd_snapshot(const RunConfig& cfg, std::ostream& log);

}  // namespace plsim

#endif  // PLSIM_COMMANDS_HPP
