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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "plsim/initial_states.hpp"
#include "plsim/lindblad.hpp"
#include "plsim/observables.hpp"
#include "plsim/propagation.hpp"
#include "test_support.hpp"

using namespace plsim;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

constexpr int kL = 15;

Grid central_local_pair(int L) {
  const auto [i, j] = central_pair(L);
  return local_pair(L, i, j);
}

// State at a single time, no intermediate samples kept.
Grid final_state(const Grid& c0, const Params& p, double t, double dt = 1e-3) {
  IntegratorConfig ic{dt, t, 1 << 30, Method::rk4};
  return evolve(c0, p, ic).states.back();
}

Outcome unitary_limit() {
  const Params p{kL, 1.0, 0.0, 0.0, 0.0};
  const auto traj = evolve(central_local_pair(kL), p, IntegratorConfig{1e-3, 3.0, 1, Method::rk4});
  double worst = 0;
  for (double n : traj.norms) worst = std::max(worst, std::abs(n - 1.0));
  return {worst <= 1e-8 && traj.norms.size() == 3001, fmt("max |N_tot - 1| = %.3e over %.0f samples", worst, traj.norms.size())};
}

Outcome initial_correlation() {
  const double h = g2_avg(homogeneous(kL, 0.9)).value;
  const double lp = g2_avg(central_local_pair(kL)).value;
  return {std::abs(h - 0.75) <= 1e-12 && lp == 0.0, fmt("homogeneous %.15f, local pair %.1f", h, lp)};
}

Outcome oracle_equivalence() {
  const auto run = [](const Params& p, double t) {
    const Grid c0 = central_local_pair(p.L);
    const auto traj = evolve(c0, p, IntegratorConfig{1e-3, t, 10, Method::rk4});
    return check_equivalence(traj, p);
  };
  const auto onsite = run(Params{5, 1.0, 0.0, 2.0, 0.0}, 2.0);
  const auto nn = run(Params{4, 1.0, 0.0, 0.0, 5.0}, 2.0);
  const bool ok = onsite.passes(1e-5) && nn.passes(1e-5);
  return {ok, fmt("on-site worst %.3e (block %.3e), nearest-neighbour worst %.3e (block %.3e)", onsite.worst(),
                  onsite.max_block_deviation, nn.worst(), nn.max_block_deviation)};
}

// Shared run for the integrator-order and norm-balance criteria.
const Params kFull{4, 1.0, 2.0, 3.0, 0.5};

Grid random_start() {
  std::mt19937_64 rng(20260101);
  return plsim::testing::random_symmetric(4, rng);
}

Outcome integrator_order() {
  const Grid c0 = random_start();
  const Grid exact = apply_propagator(propagator_expm(kFull, 1.0), c0);
  const double e1 = (final_state(c0, kFull, 1.0, 1e-3) - exact).cwiseAbs().maxCoeff();
  const double e2 = (final_state(c0, kFull, 1.0, 5e-4) - exact).cwiseAbs().maxCoeff();
  const double ratio = e1 / e2;
  return {e1 <= 1e-8 && ratio >= 12 && ratio <= 20,
          fmt("error(dt=1e-3) %.3e, error(dt=5e-4) %.3e, ratio %.2f", e1, e2, ratio)};
}

Outcome norm_balance() {
  const auto traj = evolve(random_start(), kFull, IntegratorConfig{1e-3, 1.0, 1, Method::rk4});
  const auto loss_rate = [](const Grid& c) {
    double onsite = c.diagonal().squaredNorm();
    double nn = 0;
    for (Eigen::Index n = 0; n + 1 < c.rows(); ++n) nn += std::norm(c(n, n + 1)) + std::norm(c(n + 1, n));
    return 2 * kFull.gamma * onsite + 2 * kFull.gamma_nn * nn;
  };
  double integral = 0;
  for (std::size_t k = 1; k < traj.states.size(); ++k)
    integral += 0.5 * (traj.times[k] - traj.times[k - 1]) * (loss_rate(traj.states[k]) + loss_rate(traj.states[k - 1]));
  const double lost = traj.norms.front() - traj.norms.back();
  const double residual = std::abs(lost - integral);
  return {residual <= 1e-5, fmt("norm lost %.9f, integrated loss %.9f, residual %.3e", lost, integral, residual)};
}

Outcome loss_inhibition() {
  std::vector<double> survive;
  for (double g : {2.0, 6.0, 10.0})
    survive.push_back(norm(final_state(central_local_pair(kL), Params{kL, 1.0, 0.0, g, 0.0}, 3.0)));
  const bool ordered = survive[0] < survive[1] && survive[1] < survive[2];
  const bool gap = survive[2] - survive[0] >= 0.1;
  return {ordered && gap, fmt("N_tot(3) = %.4f, %.4f, %.4f for Gamma = 2, 6, 10", survive[0], survive[1], survive[2])};
}

Outcome antibunching_sweep() {
  const auto sweep = [](const Grid& c0) {
    std::vector<double> g;
    for (int gamma = 0; gamma <= 20; gamma += 2)
      g.push_back(g2_avg(final_state(c0, Params{kL, 1.0, 0.0, double(gamma), 0.0}, 1.0)).value);
    return g;
  };
  // 15 is not on the even grid, so it gets its own run.
  const auto at15 = [](const Grid& c0) {
    return g2_avg(final_state(c0, Params{kL, 1.0, 0.0, 15.0, 0.0}, 1.0)).value;
  };
  const auto check = [](const std::vector<double>& g, double g15) {
    bool monotone = true;
    for (std::size_t k = 1; k < g.size(); ++k) monotone = monotone && g[k] <= g[k - 1];
    return monotone && g15 <= 0.1 * g[0];
  };
  const auto lp = sweep(central_local_pair(kL));
  const auto h = sweep(homogeneous(kL, 0.9));
  const double lp15 = at15(central_local_pair(kL)), h15 = at15(homogeneous(kL, 0.9));
  const bool ok = check(lp, lp15) && check(h, h15);
  return {ok, fmt("g2_avg(t0=1) at Gamma=0 -> Gamma=15: local pair %.4f -> %.4f; homogeneous %.4f -> %.4f", lp[0], lp15, h[0], h15)};
}

Outcome dissipative_vs_unitary() {
  const Grid c0 = central_local_pair(kL);
  const double lossy = g2_avg(final_state(c0, Params{kL, 1.0, 0.0, 10.0, 0.0}, 1.0)).value;
  const double hermitian = g2_avg(final_state(c0, Params{kL, 1.0, 10.0, 0.0, 0.0}, 1.0)).value;
  return {lossy < hermitian, fmt("g2_avg: Gamma=10 %.4f, beta_r=10 %.4f", lossy, hermitian)};
}

// Ratios of the normalized cross-correlation g2 against the loss-free run at t = 3,
// computed once with the matrix-exponential propagator and frozen as regression values.
constexpr double kFrozenNnOffDiag = 0.0069143433922512609;
constexpr double kFrozenNnDiag = 0.69244038212680958;
constexpr double kFrozenBothOffDiag = 0.0042083704683687695;
constexpr double kFrozenBothDiag = 0.00051463228965511001;

struct BandMeans {
  double off_diag;
  double diag;
};

BandMeans band_means(const RealMatrix<double>& m) {
  const Eigen::Index L = m.rows();
  return {(m.diagonal(1).sum() + m.diagonal(-1).sum()) / (2.0 * double(L - 1)), m.diagonal().mean()};
}

struct Selectivity {
  BandMeans g2;
  BandMeans intensity;
};

Selectivity selectivity_run(const Params& p) {
  const Grid c = final_state(homogeneous(kL, 0.9), p, 3.0);
  const auto corr = g2_matrix(c);
  if (corr.excluded != 0) throw NumericalInstability("undefined g2 entries in selectivity run");
  return {band_means(corr.g2), band_means(intensity_map(c).raw)};
}

Outcome extended_selectivity() {
  const auto base = selectivity_run(Params{kL, 1.0, 0.0, 0.0, 0.0});
  const auto nn = selectivity_run(Params{kL, 1.0, 0.0, 0.0, 10.0});
  const auto both = selectivity_run(Params{kL, 1.0, 0.0, 10.0, 10.0});
  const double r_nn_off = nn.g2.off_diag / base.g2.off_diag, r_nn_diag = nn.g2.diag / base.g2.diag;
  const double r_both_off = both.g2.off_diag / base.g2.off_diag, r_both_diag = both.g2.diag / base.g2.diag;
  const bool thresholds = r_nn_off <= 0.1 && r_nn_diag >= 0.5 && r_both_off <= 0.1 && r_both_diag <= 0.1;
  const auto near = [](double x, double frozen) { return std::abs(x - frozen) <= 1e-6 * std::abs(frozen); };
  const bool frozen = near(r_nn_off, kFrozenNnOffDiag) && near(r_nn_diag, kFrozenNnDiag) &&
                      near(r_both_off, kFrozenBothOffDiag) && near(r_both_diag, kFrozenBothDiag);
  // Raw waveguide intensities are reported for reference only.
  const double i_off = nn.intensity.off_diag / base.intensity.off_diag;
  const double i_diag = nn.intensity.diag / base.intensity.diag;
  return {thresholds && frozen,
          fmt("g2 ratios: NN-only off %.4e diag %.4f; both off %.4e diag %.4e", r_nn_off, r_nn_diag, r_both_off,
              r_both_diag) +
              fmt(" [raw intensity NN-only: off %.4e diag %.4f]", i_off, i_diag) +
              (frozen ? "" : " (regression values differ)")};
}

Outcome scale_invariance() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(2, 12);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Grid c = plsim::testing::random_symmetric(size(rng), rng, false);
    const auto lambda = plsim::testing::random_complex(rng);
    const auto a = g2_matrix(c);
    const auto b = g2_matrix((lambda * c).eval());
    if (!(a.defined == b.defined).all()) return {false, "defined mask changed under scaling"};
    for (Eigen::Index n = 0; n < c.rows(); ++n)
      for (Eigen::Index m = 0; m < c.cols(); ++m)
        if (a.defined(n, m)) worst = std::max(worst, std::abs(a.g2(n, m) - b.g2(n, m)));
  }
  return {worst <= 1e-10, fmt("max entrywise change %.3e over 100 grids", worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"unitary limit conserves N_tot", unitary_limit},
      {"initial g2_avg identity", initial_correlation},
      {"master-equation equivalence", oracle_equivalence},
      {"RK4 order and matrix-exponential agreement", integrator_order},
      {"norm-decay balance", norm_balance},
      {"loss inhibition ordering", loss_inhibition},
      {"antibunching sweep", antibunching_sweep},
      {"dissipative vs unitary interaction", dissipative_vs_unitary},
      {"nearest-neighbour loss selectivity", extended_selectivity},
      {"g2 scale and phase invariance", scale_invariance},
  };
  int failures = 0;
  int id = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", id++, name, o.detail.c_str());
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
