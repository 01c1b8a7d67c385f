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

#ifndef PLSIM_PROPAGATION_HPP
#define PLSIM_PROPAGATION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "plsim/lattice.hpp"

namespace plsim {

enum class Method { rk4, expm };

inline std::string to_string(Method m) { return m == Method::rk4 ? "rk4" : "expm"; }

struct IntegratorConfig {
  double dt = 1e-3;
  double t_final = 3.0;
  int sample_every = 1;
  Method method = Method::rk4;
};

/// Largest dt accepted without a warning: 0.01 / max(kappa, |beta_r|, gamma, gamma_nn, 1).
template <typename Scalar>
Scalar recommended_max_dt(const ModelParams<Scalar>& p) {
  using std::abs;
  const Scalar scale = std::max({p.kappa, abs(p.beta_r), p.gamma, p.gamma_nn, Scalar(1)});
  return Scalar(0.01) / scale;
}

/// Uniform step grid reaching `t_final` exactly: ceil(t_final / dt) steps of equal size <= dt.
struct StepSchedule {
  long steps = 0;
  double dt = 0;
};

inline StepSchedule make_schedule(double t_final, double dt) {
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive and finite");
  if (!(t_final >= 0) || !std::isfinite(t_final)) throw InvalidInput("t_final must be >= 0 and finite");
  StepSchedule s;
  s.steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  s.steps = std::max(s.steps, 0L);
  s.dt = s.steps > 0 ? t_final / static_cast<double>(s.steps) : dt;
  return s;
}

/// Step indices at which a trajectory is sampled: 0, k, 2k, ..., and always the last step.
inline std::vector<long> sample_steps(const StepSchedule& s, int sample_every) {
  if (sample_every < 1) throw InvalidInput("sample_every must be >= 1");
  std::vector<long> out;
  for (long k = 0; k <= s.steps; k += sample_every) out.push_back(k);
  if (out.back() != s.steps) out.push_back(s.steps);
  return out;
}

inline void validate_config(const IntegratorConfig& ic) {
  make_schedule(ic.t_final, ic.dt);
  if (ic.sample_every < 1) throw InvalidInput("sample_every must be >= 1");
}

/// One classical RK4 step of dc/dt = rhs(c), followed by averaging with the transpose.
template <typename Derived, typename Scalar>
AmplitudeGrid<Scalar> step_rk4(const Eigen::MatrixBase<Derived>& c, const ModelParams<Scalar>& p, Scalar dt) {
  if (!(dt > 0)) throw InvalidInput("dt must be positive");
  const AmplitudeGrid<Scalar> c0 = c;
  const Scalar half = dt / Scalar(2);
  const AmplitudeGrid<Scalar> k1 = rhs(c0, p);
  const AmplitudeGrid<Scalar> k2 = rhs(c0 + half * k1, p);
  const AmplitudeGrid<Scalar> k3 = rhs(c0 + half * k2, p);
  const AmplitudeGrid<Scalar> k4 = rhs(c0 + dt * k3, p);
  AmplitudeGrid<Scalar> out = c0 + (dt / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
  symmetrize(out);
  return out;
}

inline constexpr Eigen::Index kDefaultExpmCap = 1024;

/// exp(t A) for the assembled L^2 x L^2 generator (Pade scaling-and-squaring).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> propagator_expm(
    const ModelParams<Scalar>& p, Scalar t, Eigen::Index cap = kDefaultExpmCap) {
  validate_params(p);
  const Eigen::Index dim = Eigen::Index(p.L) * p.L;
  if (dim > cap)
    throw CapExceeded("expm propagator: L^2 = " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
  using Dense = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  const Dense A = assemble_generator(p) * std::complex<Scalar>(t);
  return A.exp();
}

template <typename Derived, typename Scalar>
AmplitudeGrid<Scalar> apply_propagator(
    const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& U,
    const Eigen::MatrixBase<Derived>& c) {
  const AmplitudeGrid<Scalar> grid = c;
  return unflatten<Scalar>(U * flatten<Scalar>(grid), grid.rows());
}

template <typename Scalar = double>
struct Trajectory {
  std::vector<double> times;
  std::vector<AmplitudeGrid<Scalar>> states;
  std::vector<Scalar> norms;
  ModelParams<Scalar> params;
  IntegratorConfig config;
  double dt_used = 0;  // equal-size step that lands exactly on t_final
  std::vector<std::string> warnings;
};

namespace detail {

template <typename Scalar>
void check_finite(const AmplitudeGrid<Scalar>& c, double t) {
  if (!c.allFinite())
    throw NumericalInstability("non-finite amplitude at t=" + std::to_string(t) +
                               "; reduce dt");
}

template <typename Scalar>
void check_initial(const AmplitudeGrid<Scalar>& c0, const ModelParams<Scalar>& p) {
  validate_params(p);
  check_grid_shape(c0, p.L);
  if (!c0.allFinite()) throw InvalidInput("initial grid has non-finite entries");
  if (max_asymmetry(c0) > Scalar(1e-12)) throw InvalidInput("initial grid is not symmetric");
  using std::abs;
  if (abs(norm(c0) - Scalar(1)) > Scalar(1e-8)) throw InvalidInput("initial grid must have unit norm");
}

}  // namespace detail

/// Integrates from t = 0 to ic.t_final, recording every ic.sample_every-th step and the final one.
template <typename Scalar>
Trajectory<Scalar> evolve(const AmplitudeGrid<Scalar>& c0, const ModelParams<Scalar>& p,
                          const IntegratorConfig& ic) {
  detail::check_initial(c0, p);
  validate_config(ic);
  const StepSchedule sched = make_schedule(ic.t_final, ic.dt);
  const std::vector<long> samples = sample_steps(sched, ic.sample_every);

  Trajectory<Scalar> traj;
  traj.params = p;
  traj.config = ic;
  traj.dt_used = sched.dt;
  if (ic.method == Method::rk4 && ic.dt > double(recommended_max_dt(p)))
    traj.warnings.push_back("dt=" + std::to_string(ic.dt) + " exceeds recommended " +
                            std::to_string(double(recommended_max_dt(p))));

  AmplitudeGrid<Scalar> c = c0;
  auto record = [&](long step) {
    traj.times.push_back(double(step) * sched.dt);
    traj.states.push_back(c);
    traj.norms.push_back(norm(c));
  };
  record(0);

  if (ic.method == Method::rk4) {
    std::size_t next = 1;
    for (long step = 1; step <= sched.steps; ++step) {
      c = step_rk4(c, p, Scalar(sched.dt));
      if (next < samples.size() && samples[next] == step) {
        detail::check_finite(c, double(step) * sched.dt);
        record(step);
        ++next;
      }
    }
  } else {
    using Dense = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
    const Dense A = assemble_generator(p);
    if (A.rows() > kDefaultExpmCap)
      throw CapExceeded("expm method: L^2 = " + std::to_string(A.rows()) + " exceeds cap " +
                        std::to_string(kDefaultExpmCap));
    long prev_gap = -1;
    Dense U;
    for (std::size_t s = 1; s < samples.size(); ++s) {
      const long gap = samples[s] - samples[s - 1];
      if (gap != prev_gap) {
        U = (A * std::complex<Scalar>(Scalar(double(gap) * sched.dt))).exp();
        prev_gap = gap;
      }
      c = apply_propagator(U, c);
      symmetrize(c);
      detail::check_finite(c, double(samples[s]) * sched.dt);
      record(samples[s]);
    }
  }
  return traj;
}

/// States at the requested times (any order, each in [0, ic.t_final] or beyond),
/// integrating segment by segment so every requested time is hit exactly.
template <typename Scalar>
std::vector<AmplitudeGrid<Scalar>> evolve_to_times(const AmplitudeGrid<Scalar>& c0,
                                                   const ModelParams<Scalar>& p,
                                                   const IntegratorConfig& ic,
                                                   const std::vector<double>& times) {
  detail::check_initial(c0, p);
  for (double t : times)
    if (!(t >= 0) || !std::isfinite(t)) throw InvalidInput("snapshot times must be finite and >= 0");

  std::vector<std::size_t> order(times.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] < times[b]; });

  std::vector<AmplitudeGrid<Scalar>> out(times.size());
  AmplitudeGrid<Scalar> c = c0;
  double t_now = 0;
  for (std::size_t k : order) {
    const double span = times[k] - t_now;
    if (span > 0) {
      const StepSchedule sched = make_schedule(span, ic.dt);
      if (ic.method == Method::rk4) {
        for (long step = 1; step <= sched.steps; ++step) c = step_rk4(c, p, Scalar(sched.dt));
      } else {
        c = apply_propagator(propagator_expm(p, Scalar(span)), c);
        symmetrize(c);
      }
      detail::check_finite(c, times[k]);
      t_now = times[k];
    }
    out[k] = c;
  }
  return out;
}

}  // namespace plsim

#endif  // PLSIM_PROPAGATION_HPP
