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

// Master-equation reference solver on the truncated Fock space
// vacuum (+) two-particle manifold of an L-site Bose-Hubbard chain.
//
// Operators are assembled from bosonic ladder algebra acting on occupation
// vectors; nothing here reuses the grid stencil, so agreement with the
// amplitude-grid propagation is a genuine cross-check.

#ifndef PLSIM_LINDBLAD_HPP
#define PLSIM_LINDBLAD_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "plsim/lattice.hpp"
#include "plsim/observables.hpp"
#include "plsim/propagation.hpp"

namespace plsim {

inline constexpr Eigen::Index kDefaultOracleDimCap = 500;

/// Deterministic enumeration of
///   [vacuum] ++ [|1_n> for n, only if with_single_particle] ++ [|2_n> for n] ++ [|1_n 1_m> for n < m]
/// Each state is stored as a sorted list of occupied sites (with repetition).
class FockBasis {
 public:
  using Sites = std::vector<int>;

  explicit FockBasis(int L, bool with_single_particle = false) : L_(L), with_single_(with_single_particle) {
    if (L < 2) throw InvalidInput("L too small: need L >= 2, got " + std::to_string(L));
    add({});
    if (with_single_)
      for (int n = 0; n < L; ++n) add({n});
    for (int n = 0; n < L; ++n) add({n, n});
    for (int n = 0; n < L; ++n)
      for (int m = n + 1; m < L; ++m) add({n, m});
  }

  int sites() const { return L_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(states_.size()); }
  bool has_single_particle_sector() const { return with_single_; }
  const Sites& state(Eigen::Index k) const { return states_.at(static_cast<std::size_t>(k)); }
  int particles(Eigen::Index k) const { return static_cast<int>(state(k).size()); }

  /// Index of the state with the given occupied sites (any order), if it is in the basis.
  std::optional<Eigen::Index> find(Sites s) const {
    std::sort(s.begin(), s.end());
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Eigen::Index index(Sites s) const {
    auto k = find(std::move(s));
    if (!k) throw InvalidInput("state not in Fock basis");
    return *k;
  }

  Eigen::Index vacuum() const { return 0; }
  Eigen::Index doubly_occupied(int n) const { return index({n, n}); }
  Eigen::Index pair(int n, int m) const { return index({n, m}); }

  /// Indices of all two-particle states, in basis order.
  std::vector<Eigen::Index> two_particle_indices() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index k = 0; k < dim(); ++k)
      if (particles(k) == 2) out.push_back(k);
    return out;
  }

  int occupation(Eigen::Index k, int site) const {
    const auto& s = state(k);
    return static_cast<int>(std::count(s.begin(), s.end(), site));
  }

 private:
  void add(Sites s) {
    index_.emplace(s, dim());
    states_.push_back(std::move(s));
  }

  int L_;
  bool with_single_;
  std::vector<Sites> states_;
  std::map<Sites, Eigen::Index> index_;
};

/// One ladder operator; a product is listed left to right as written, e.g. a_0^+ a_1 = {{0,true},{1,false}}.
struct Ladder {
  int site;
  bool dagger;
};

template <typename Scalar>
using SparseOp = Eigen::SparseMatrix<std::complex<Scalar>>;

template <typename Scalar>
using DenseOp = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Matrix of a product of ladder operators restricted to the basis. Components that
/// leave the basis (e.g. into an excluded particle-number sector) are dropped.
template <typename Scalar>
SparseOp<Scalar> ladder_product(const FockBasis& basis, const std::vector<Ladder>& product) {
  using Complex = std::complex<Scalar>;
  std::vector<Eigen::Triplet<Complex>> entries;
  for (Eigen::Index col = 0; col < basis.dim(); ++col) {
    std::vector<int> occ(static_cast<std::size_t>(basis.sites()), 0);
    for (int s : basis.state(col)) ++occ[static_cast<std::size_t>(s)];
    Scalar amp = 1;
    for (auto op = product.rbegin(); op != product.rend() && amp != Scalar(0); ++op) {
      int& n = occ[static_cast<std::size_t>(op->site)];
      if (op->dagger) {
        amp *= std::sqrt(Scalar(n + 1));
        ++n;
      } else {
        amp *= std::sqrt(Scalar(n));
        n = std::max(n - 1, 0);
      }
    }
    if (amp == Scalar(0)) continue;
    FockBasis::Sites sites;
    for (int j = 0; j < basis.sites(); ++j)
      for (int r = 0; r < occ[static_cast<std::size_t>(j)]; ++r) sites.push_back(j);
    if (auto row = basis.find(sites)) entries.emplace_back(*row, col, Complex(amp));
  }
  SparseOp<Scalar> out(basis.dim(), basis.dim());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

template <typename Scalar>
struct JumpOperator {
  SparseOp<Scalar> op;
  Scalar rate;
  std::string label;
};

/// Hamiltonian, number operators and jump operators of the dissipative chain.
template <typename Scalar>
struct FockOperators {
  SparseOp<Scalar> hamiltonian;  // lossless H_BH: hopping plus (beta_r / 2) n (n - 1)
  SparseOp<Scalar> hopping;      // -kappa sum_j (a_j^+ a_{j+1} + h.c.)
  std::vector<SparseOp<Scalar>> number;
  std::vector<JumpOperator<Scalar>> jumps;
};

struct OracleOptions {
  bool with_single_particle = false;
  bool corrupt_sign = false;  // negative-control hook: flips the sign of the coherent part
  Eigen::Index dim_cap = kDefaultOracleDimCap;
};

inline void check_oracle_cap(int L, bool with_single_particle, Eigen::Index cap) {
  const Eigen::Index dim = 1 + Eigen::Index(L) * (L + 1) / 2 + (with_single_particle ? L : 0);
  if (dim > cap)
    throw CapExceeded("oracle Fock dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
}

/// Jumps: a_j^2 with rate gamma (on-site) and a_j a_{j+1} with rate 2 gamma_nn (nearest neighbour).
/// The latter is the jump set whose anti-Hermitian part is -i gamma_nn sum_j n_j n_{j+1}.
template <typename Scalar>
FockOperators<Scalar> build_operators(const FockBasis& basis, const ModelParams<Scalar>& p) {
  validate_params(p);
  if (basis.sites() != p.L) throw InvalidInput("dimension mismatch: basis L differs from model L");
  const int L = p.L;
  FockOperators<Scalar> ops;
  ops.hopping = SparseOp<Scalar>(basis.dim(), basis.dim());
  SparseOp<Scalar> interaction(basis.dim(), basis.dim());
  for (int j = 0; j + 1 < L; ++j) {
    ops.hopping += ladder_product<Scalar>(basis, {{j, true}, {j + 1, false}});
    ops.hopping += ladder_product<Scalar>(basis, {{j + 1, true}, {j, false}});
  }
  ops.hopping *= std::complex<Scalar>(-p.kappa);
  for (int j = 0; j < L; ++j) {
    ops.number.push_back(ladder_product<Scalar>(basis, {{j, true}, {j, false}}));
    interaction += ladder_product<Scalar>(basis, {{j, true}, {j, true}, {j, false}, {j, false}});
  }
  ops.hamiltonian = ops.hopping + std::complex<Scalar>(p.beta_r / Scalar(2)) * interaction;

  if (p.gamma > Scalar(0))
    for (int j = 0; j < L; ++j)
      ops.jumps.push_back({ladder_product<Scalar>(basis, {{j, false}, {j, false}}), p.gamma,
                           "a_" + std::to_string(j) + "^2"});
  if (p.gamma_nn > Scalar(0))
    for (int j = 0; j + 1 < L; ++j)
      ops.jumps.push_back({ladder_product<Scalar>(basis, {{j, false}, {j + 1, false}}), Scalar(2) * p.gamma_nn,
                           "a_" + std::to_string(j) + " a_" + std::to_string(j + 1)});
  return ops;
}

/// Everything lindblad_rhs needs, precomputed once per parameter set.
template <typename Scalar>
struct LindbladModel {
  FockBasis basis;
  ModelParams<Scalar> params;
  FockOperators<Scalar> ops;
  SparseOp<Scalar> decay;  // sum_k rate_k L_k^+ L_k
  std::complex<Scalar> coherent_sign{-1};  // multiplies i[H, rho]

  LindbladModel(const ModelParams<Scalar>& p, const OracleOptions& opt = {})
      : basis((check_oracle_cap(p.L, opt.with_single_particle, opt.dim_cap), p.L), opt.with_single_particle),
        params(p),
        ops(build_operators(basis, p)),
        decay(basis.dim(), basis.dim()) {
    for (const auto& J : ops.jumps) decay += std::complex<Scalar>(J.rate) * SparseOp<Scalar>(J.op.adjoint() * J.op);
    if (opt.corrupt_sign) coherent_sign = std::complex<Scalar>(1);
  }
};

/// d rho / dt = -i [H, rho] + sum_k rate_k (L_k rho L_k^+ - {L_k^+ L_k, rho} / 2)
template <typename Derived, typename Scalar>
DenseOp<Scalar> lindblad_rhs(const Eigen::MatrixBase<Derived>& rho, const LindbladModel<Scalar>& model) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index dim = model.basis.dim();
  if (rho.rows() != dim || rho.cols() != dim)
    throw InvalidInput("dimension mismatch: density matrix is not " + std::to_string(dim) + "x" +
                       std::to_string(dim));
  const DenseOp<Scalar> r = rho;
  const auto& H = model.ops.hamiltonian;
  DenseOp<Scalar> out = model.coherent_sign * Complex(0, 1) * (H * r - r * H);
  out -= Scalar(0.5) * (model.decay * r + r * model.decay);
  for (const auto& J : model.ops.jumps) {
    const DenseOp<Scalar> Jr = J.op * r;
    out += J.rate * (Jr * J.op.adjoint());
  }
  return out;
}

template <typename Derived, typename Scalar>
DenseOp<Scalar> lindblad_rhs(const Eigen::MatrixBase<Derived>& rho, const ModelParams<Scalar>& p) {
  return lindblad_rhs(rho, LindbladModel<Scalar>(p));
}

template <typename Scalar>
DenseOp<Scalar> step_lindblad_rk4(const DenseOp<Scalar>& rho, const LindbladModel<Scalar>& model, Scalar dt) {
  const Scalar half = dt / Scalar(2);
  const DenseOp<Scalar> k1 = lindblad_rhs(rho, model);
  const DenseOp<Scalar> k2 = lindblad_rhs(rho + half * k1, model);
  const DenseOp<Scalar> k3 = lindblad_rhs(rho + half * k2, model);
  const DenseOp<Scalar> k4 = lindblad_rhs(rho + dt * k3, model);
  DenseOp<Scalar> out = rho + (dt / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
  return (out + out.adjoint()) / Scalar(2);
}

template <typename Scalar = double>
struct DensityTrajectory {
  std::vector<double> times;
  std::vector<DenseOp<Scalar>> states;
};

/// RK4 on the same step schedule and sample points as evolve() for the same config.
template <typename Scalar>
DensityTrajectory<Scalar> evolve_density(const DenseOp<Scalar>& rho0, const LindbladModel<Scalar>& model,
                                         const IntegratorConfig& ic) {
  validate_config(ic);
  const Eigen::Index dim = model.basis.dim();
  if (rho0.rows() != dim || rho0.cols() != dim) throw InvalidInput("dimension mismatch for rho0");
  if (!rho0.allFinite()) throw InvalidInput("rho0 has non-finite entries");
  const StepSchedule sched = make_schedule(ic.t_final, ic.dt);
  const std::vector<long> samples = sample_steps(sched, ic.sample_every);

  DensityTrajectory<Scalar> out;
  DenseOp<Scalar> rho = rho0;
  out.times.push_back(0.0);
  out.states.push_back(rho);
  std::size_t next = 1;
  for (long step = 1; step <= sched.steps; ++step) {
    rho = step_lindblad_rk4(rho, model, Scalar(sched.dt));
    if (next < samples.size() && samples[next] == step) {
      if (!rho.allFinite())
        throw NumericalInstability("non-finite density matrix at t=" + std::to_string(double(step) * sched.dt));
      out.times.push_back(double(step) * sched.dt);
      out.states.push_back(rho);
      ++next;
    }
  }
  return out;
}

/// Fock coefficients of the (possibly unnormalized) two-boson state:
/// <2_n|psi> = c_nn, <1_n 1_m|psi> = sqrt(2) c_nm for n < m, vacuum (and single-particle) 0.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> fock_vector(const AmplitudeGrid<Scalar>& c,
                                                                   const FockBasis& basis) {
  check_grid_shape(c, basis.sites());
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> psi =
      Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>::Zero(basis.dim());
  const int L = basis.sites();
  const Scalar root2 = std::sqrt(Scalar(2));
  for (int n = 0; n < L; ++n) {
    psi(basis.doubly_occupied(n)) = c(n, n);
    for (int m = n + 1; m < L; ++m) psi(basis.pair(n, m)) = root2 * c(n, m);
  }
  return psi;
}

template <typename Scalar>
DenseOp<Scalar> embed_pure_state(const AmplitudeGrid<Scalar>& c, const FockBasis& basis) {
  using std::abs;
  if (abs(norm(c) - Scalar(1)) > Scalar(1e-8)) throw InvalidInput("embed_pure_state: grid must have unit norm");
  const auto psi = fock_vector(c, basis);
  return psi * psi.adjoint();
}

/// Inverse of embed_pure_state for a rank-1 two-particle rho, with the phase
/// fixed so the largest-population amplitude is real and positive.
template <typename Scalar>
AmplitudeGrid<Scalar> extract_grid(const DenseOp<Scalar>& rho, const FockBasis& basis) {
  Eigen::Index pivot = 0;
  rho.diagonal().real().maxCoeff(&pivot);
  const Scalar pop = rho(pivot, pivot).real();
  if (!(pop > Scalar(0))) throw InvalidInput("extract_grid: empty density matrix");
  const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> psi = rho.col(pivot) / std::sqrt(pop);
  const int L = basis.sites();
  AmplitudeGrid<Scalar> c(L, L);
  const Scalar root2 = std::sqrt(Scalar(2));
  for (int n = 0; n < L; ++n) {
    c(n, n) = psi(basis.doubly_occupied(n));
    for (int m = n + 1; m < L; ++m) c(n, m) = c(m, n) = psi(basis.pair(n, m)) / root2;
  }
  return c;
}

/// Tr(op rho), summed over the nonzeros of op.
template <typename Scalar>
std::complex<Scalar> expectation(const DenseOp<Scalar>& rho, const SparseOp<Scalar>& op) {
  std::complex<Scalar> sum = 0;
  for (Eigen::Index col = 0; col < op.outerSize(); ++col)
    for (typename SparseOp<Scalar>::InnerIterator it(op, col); it; ++it) sum += it.value() * rho(it.col(), it.row());
  return sum;
}

struct EquivalenceReport {
  int L = 0;
  std::size_t samples = 0;
  double t_final = 0;
  double max_block_deviation = 0;    // |rho_2p - psi psi^+| entrywise
  double max_density_deviation = 0; // |Tr(rho n_k) - 2 N_k|
  double max_G2_deviation = 0;       // |Tr(rho a_n^+ a_m^+ a_m a_n) - G2_nm|
  double max_vacuum_coherence = 0;   // |<0|rho|two-particle>|
  double max_population_norm_deviation = 0;  // |P2 - norm(c)|
  double max_purity_deviation = 0;   // |1 - Tr((rho_2p / P2)^2)|
  double max_trace_deviation = 0;    // |Tr rho - 1|
  double max_hermiticity_deviation = 0;
  double min_eigenvalue = 0;
  double max_single_particle_population = 0;

  double worst() const { return std::max({max_block_deviation, max_density_deviation, max_G2_deviation}); }
  bool passes(double threshold) const { return worst() <= threshold; }
};

/// Runs the master equation from the embedded initial grid of `traj` and compares
/// it sample by sample with the non-Hermitian grid evolution.
template <typename Scalar>
EquivalenceReport check_equivalence(const Trajectory<Scalar>& traj, const ModelParams<Scalar>& p,
                                    const OracleOptions& opt = {}) {
  if (traj.states.empty()) throw InvalidInput("check_equivalence: empty trajectory");
  const auto& tp = traj.params;
  if (tp.L != p.L || tp.kappa != p.kappa || tp.beta_r != p.beta_r || tp.gamma != p.gamma ||
      tp.gamma_nn != p.gamma_nn)
    throw InvalidInput("check_equivalence: trajectory was produced with different parameters");

  const LindbladModel<Scalar> model(p, opt);
  const FockBasis& basis = model.basis;
  const DenseOp<Scalar> rho0 = embed_pure_state(traj.states.front(), basis);
  const auto dens = evolve_density(rho0, model, traj.config);
  if (dens.times.size() != traj.times.size())
    throw InvalidInput("check_equivalence: sample count mismatch");

  const int L = p.L;
  std::vector<SparseOp<Scalar>> pair_corr(static_cast<std::size_t>(L * L));
  for (int n = 0; n < L; ++n)
    for (int m = 0; m < L; ++m)
      pair_corr[static_cast<std::size_t>(n * L + m)] =
          ladder_product<Scalar>(basis, {{n, true}, {m, true}, {m, false}, {n, false}});

  const std::vector<Eigen::Index> block = basis.two_particle_indices();
  const auto nb = static_cast<Eigen::Index>(block.size());
  const std::size_t eig_stride = std::max<std::size_t>(1, dens.states.size() / 20);

  EquivalenceReport rep;
  rep.L = L;
  rep.samples = traj.states.size();
  rep.t_final = traj.times.back();
  rep.min_eigenvalue = 1.0;
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    if (std::abs(dens.times[s] - traj.times[s]) > 1e-12)
      throw InvalidInput("check_equivalence: sample times differ");
    const auto& rho = dens.states[s];
    const auto& c = traj.states[s];
    const auto psi = fock_vector(c, basis);

    DenseOp<Scalar> rho2(nb, nb);
    for (Eigen::Index a = 0; a < nb; ++a)
      for (Eigen::Index b = 0; b < nb; ++b) rho2(a, b) = rho(block[a], block[b]);
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> psi2(nb);
    for (Eigen::Index a = 0; a < nb; ++a) psi2(a) = psi(block[a]);
    rep.max_block_deviation =
        std::max(rep.max_block_deviation, double((rho2 - psi2 * psi2.adjoint()).cwiseAbs().maxCoeff()));

    const auto n_k = site_density(c);
    for (int k = 0; k < L; ++k)
      rep.max_density_deviation = std::max(
          rep.max_density_deviation,
          double(std::abs(expectation(rho, model.ops.number[static_cast<std::size_t>(k)]) - Scalar(2) * n_k(k))));

    const auto G2 = g2_matrix(c).G2;
    for (int n = 0; n < L; ++n)
      for (int m = 0; m < L; ++m)
        rep.max_G2_deviation =
            std::max(rep.max_G2_deviation,
                     double(std::abs(expectation(rho, pair_corr[static_cast<std::size_t>(n * L + m)]) - G2(n, m))));

    for (Eigen::Index a : block)
      rep.max_vacuum_coherence = std::max(rep.max_vacuum_coherence, double(std::abs(rho(basis.vacuum(), a))));

    const Scalar P2 = rho2.trace().real();
    rep.max_population_norm_deviation =
        std::max(rep.max_population_norm_deviation, double(std::abs(P2 - norm(c))));
    if (P2 > Scalar(1e-12)) {
      const DenseOp<Scalar> normalized = rho2 / P2;
      rep.max_purity_deviation = std::max(
          rep.max_purity_deviation, double(std::abs(Scalar(1) - (normalized * normalized).trace().real())));
    }
    rep.max_trace_deviation = std::max(rep.max_trace_deviation, double(std::abs(rho.trace() - Scalar(1))));
    rep.max_hermiticity_deviation =
        std::max(rep.max_hermiticity_deviation, double((rho - rho.adjoint()).cwiseAbs().maxCoeff()));
    for (Eigen::Index k = 0; k < basis.dim(); ++k)
      if (basis.particles(k) == 1)
        rep.max_single_particle_population =
            std::max(rep.max_single_particle_population, double(std::abs(rho(k, k))));
    if (s % eig_stride == 0 || s + 1 == dens.states.size()) {
      Eigen::SelfAdjointEigenSolver<DenseOp<Scalar>> es(rho, Eigen::EigenvaluesOnly);
      rep.min_eigenvalue = std::min(rep.min_eigenvalue, double(es.eigenvalues().minCoeff()));
    }
  }
  return rep;
}

}  // namespace plsim

#endif  // PLSIM_LINDBLAD_HPP
