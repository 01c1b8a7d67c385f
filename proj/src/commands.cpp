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

#include "plsim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "plsim/format.hpp"
#include "plsim/propagation.hpp"

namespace plsim {

namespace {

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const SweepFailure& e) {
    log << "error: " << e.what() << '\n';
    return kExitNumericalInstability;
  } catch (const NumericalInstability& e) {
    log << "error: " << e.what() << '\n';
    return kExitNumericalInstability;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::length_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  return out;
}

std::string extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

Metadata base_metadata(const std::string& command, const RunConfig& cfg) {
  Metadata meta{{"command", command}};
  for (auto& kv : describe_config(cfg)) meta.push_back(std::move(kv));
  return meta;
}

void write_snapshots(const RunConfig& cfg, const Grid& c0, const std::vector<double>& times, std::ostream& log) {
  if (times.empty()) return;
  const auto grids = evolve_to_times(c0, cfg.model, cfg.integrator, times);
  const auto dir = cfg.outputs.out_dir / "snapshots";
  for (std::size_t k = 0; k < times.size(); ++k)
    for (const auto& path : write_snapshot(dir, observe(grids[k], times[k]), cfg.outputs.format))
      log << "wrote " << path.string() << '\n';
  // Matrix files carry only L, t and kind; the run parameters go next to them.
  std::ofstream meta(dir / "metadata.txt");
  meta << metadata_line(describe_config(cfg)) << '\n';
  if (!meta) throw InvalidInput("cannot write " + (dir / "metadata.txt").string());
}

}  // namespace

Grid build_initial_state(const RunConfig& cfg, std::ostream& log) {
  const InitialStateSpec spec = initial_spec(cfg);
  if (const auto* file = std::get_if<FileSpec>(&spec)) {
    LoadedState loaded = load_state(file->path);
    if (loaded.renormalized)
      log << "warning: state file norm " << format_double(loaded.input_norm) << " renormalized to 1\n";
    if (loaded.grid.rows() != cfg.model.L)
      throw InvalidInput("state file has L=" + std::to_string(loaded.grid.rows()) + " but model has L=" +
                         std::to_string(cfg.model.L));
    return loaded.grid;
  }
  return make_initial_state(spec, cfg.model.L);
}

std::vector<ObservableRecord<double>> observe_trajectory(const Trajectory<double>& traj) {
  std::vector<ObservableRecord<double>> out;
  out.reserve(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) out.push_back(observe(traj.states[k], traj.times[k]));
  return out;
}

Params with_sweep_value(Params p, SweepParam param, double value) {
  switch (param) {
    case SweepParam::gamma:
      p.gamma = value;
      break;
    case SweepParam::gamma_nn:
      p.gamma_nn = value;
      break;
    case SweepParam::beta_r:
      p.beta_r = value;
      break;
  }
  return p;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, std::ostream& log) {
  if (cfg.sweep_values.empty()) throw InvalidInput("sweep needs at least one value");
  for (double v : cfg.sweep_values) validate_params(with_sweep_value(cfg.model, cfg.sweep_param, v));
  const Grid c0 = build_initial_state(cfg, log);

  IntegratorConfig ic = cfg.integrator;
  ic.t_final = cfg.t0;
  ic.sample_every = std::numeric_limits<int>::max();

  const std::size_t n = cfg.sweep_values.size();
  std::vector<SweepRow> rows(n);
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const double value = cfg.sweep_values[k];
      try {
        const Params p = with_sweep_value(cfg.model, cfg.sweep_param, value);
        const Trajectory<double> traj = evolve(c0, p, ic);
        const Grid& c = traj.states.back();
        rows[k] = SweepRow{value, g2_avg(c).value, site_density(c).sum()};
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < n; ++k)
    if (errors[k]) throw SweepFailure(k, *errors[k]);
  return rows;
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    validate_config(cfg);
    const Grid c0 = build_initial_state(cfg, log);
    const Trajectory<double> traj = evolve(c0, cfg.model, cfg.integrator);
    for (const auto& w : traj.warnings) log << "warning: " << w << '\n';

    const auto path = cfg.outputs.out_dir / ("timeseries" + extension(cfg.outputs.format));
    auto out = open_output(path);
    write_timeseries(out, base_metadata("run", cfg), observe_trajectory(traj), cfg.outputs.format);
    log << "wrote " << path.string() << '\n';

    write_snapshots(cfg, c0, cfg.outputs.snapshot_times, log);
    return int(kExitOk);
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    RunConfig checked = cfg;
    checked.integrator.t_final = std::max(cfg.integrator.t_final, cfg.t0);
    validate_config(checked);
    const auto rows = run_sweep(cfg, log);

    RunConfig shown = cfg;
    shown.integrator.t_final = cfg.t0;
    Metadata meta = base_metadata("sweep", shown);
    meta.emplace_back("param", to_string(cfg.sweep_param));
    meta.emplace_back("t0", format_double(cfg.t0));
    meta.emplace_back("almost_zero_fraction", format_double(kAlmostZeroFraction));

    const auto path = cfg.outputs.out_dir / ("sweep" + extension(cfg.outputs.format));
    auto out = open_output(path);
    write_sweep(out, meta, cfg.sweep_param, rows, cfg.outputs.format);
    log << "wrote " << path.string() << '\n';
    return int(kExitOk);
  });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    validate_config(cfg);
    check_oracle_cap(cfg.model.L, false, kDefaultOracleDimCap);
    const Grid c0 = build_initial_state(cfg, log);
    IntegratorConfig ic = cfg.integrator;
    ic.method = Method::rk4;
    const Trajectory<double> traj = evolve(c0, cfg.model, ic);

    OracleOptions opt;
    opt.corrupt_sign = cfg.oracle_corrupt_sign;
    const EquivalenceReport rep = check_equivalence(traj, cfg.model, opt);

    RunConfig shown = cfg;
    shown.integrator = ic;
    Metadata meta = base_metadata("oracle", shown);
    if (cfg.oracle_corrupt_sign) meta.emplace_back("corrupt_sign", "1");
    write_report(log, meta, rep, cfg.oracle_threshold, OutputFormat::csv);

    const auto path = cfg.outputs.out_dir / ("oracle" + std::string(cfg.outputs.format == OutputFormat::csv ? ".txt" : ".json"));
    auto out = open_output(path);
    write_report(out, meta, rep, cfg.oracle_threshold, cfg.outputs.format);
    return int(rep.passes(cfg.oracle_threshold) ? kExitOk : kExitEquivalenceFailure);
  });
}

int cmd_snapshot(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    if (cfg.outputs.snapshot_times.empty()) throw InvalidInput("snapshot needs at least one time (--times)");
    RunConfig checked = cfg;
    checked.integrator.t_final =
        std::max(cfg.integrator.t_final,
                 *std::max_element(cfg.outputs.snapshot_times.begin(), cfg.outputs.snapshot_times.end()));
    validate_config(checked);
    const Grid c0 = build_initial_state(cfg, log);
    write_snapshots(cfg, c0, cfg.outputs.snapshot_times, log);
    return int(kExitOk);
  });
}

}  // namespace plsim
