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

// Intensity-based observables of the two-boson state encoded in a grid.
//
// Conventions (psi = 2^{-1/2} sum_{n,m} c_nm a_n^+ a_m^+ |0>):
//   N_k        = sum_n |c_kn|^2             = <n_k> / 2
//   G2_nm      = <a_n^+ a_m^+ a_m a_n>       = 2 |c_nm|^2
//   g2_nm      = G2_nm / (<n_n> <n_m>)
//   g2_avg     = sum_n g2_nn / L
// All expectations use the unnormalized (decaying) state; g2 is invariant
// under c -> lambda c, so the choice does not matter for it.

#ifndef PLSIM_OBSERVABLES_HPP
#define PLSIM_OBSERVABLES_HPP

#include <limits>

#include "plsim/lattice.hpp"

namespace plsim {

inline constexpr double kDensityFloor = 1e-14;

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Derived>
RealVector<typename Derived::RealScalar> site_density(const Eigen::MatrixBase<Derived>& c) {
  return c.cwiseAbs2().rowwise().sum();
}

template <typename Scalar>
struct Correlations {
  RealMatrix<Scalar> G2;
  RealMatrix<Scalar> g2;                                        // NaN where undefined
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> defined;  // density product >= floor
  int excluded = 0;
};

// g2 takes its expectations in the normalized two-particle state c / |c|, so it is
// invariant under c -> lambda c. G2 itself stays unnormalized (it is what the waveguides image).
// With Tr(rho) = 1 the two differ by the factor N_tot; at unit norm they coincide.
template <typename Derived>
RealVector<typename Derived::RealScalar> normalized_occupation(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::RealScalar;
  const Scalar total = c.squaredNorm();
  if (!(total > Scalar(0))) return RealVector<Scalar>::Zero(c.rows());
  return Scalar(2) * site_density(c) / total;
}

template <typename Derived>
Correlations<typename Derived::RealScalar> g2_matrix(const Eigen::MatrixBase<Derived>& c,
                                                     double floor = kDensityFloor) {
  using Scalar = typename Derived::RealScalar;
  Correlations<Scalar> out;
  out.G2 = Scalar(2) * c.cwiseAbs2();
  const Scalar total = c.squaredNorm();
  const RealVector<Scalar> occupation = normalized_occupation(c);
  const RealMatrix<Scalar> denom = occupation * occupation.transpose();
  out.defined = denom.array() >= Scalar(floor);
  out.g2 = out.defined.select(out.G2.array() / (total * denom.array()), std::numeric_limits<Scalar>::quiet_NaN());
  out.excluded = static_cast<int>((!out.defined).count());
  return out;
}

template <typename Scalar>
struct CorrelationAverage {
  Scalar value = 0;
  int excluded = 0;  // diagonal entries skipped for vanishing density
};

/// sum_n g2_nn / L over defined diagonal entries; undefined ones contribute 0.
template <typename Derived>
CorrelationAverage<typename Derived::RealScalar> g2_avg(const Eigen::MatrixBase<Derived>& c,
                                                        double floor = kDensityFloor) {
  using Scalar = typename Derived::RealScalar;
  const Scalar total = c.squaredNorm();
  const RealVector<Scalar> occupation = normalized_occupation(c);
  CorrelationAverage<Scalar> out;
  for (Eigen::Index n = 0; n < c.rows(); ++n) {
    const Scalar denom = occupation(n) * occupation(n);
    if (denom < Scalar(floor)) {
      ++out.excluded;
      continue;
    }
    out.value += Scalar(2) * std::norm(c(n, n)) / (total * denom);
  }
  out.value /= Scalar(c.rows());
  return out;
}

/// sum_n G2_nn / L.
template <typename Derived>
typename Derived::RealScalar G2_avg(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::RealScalar;
  return Scalar(2) * c.diagonal().cwiseAbs2().sum() / Scalar(c.rows());
}

template <typename Scalar>
struct IntensityMap {
  RealMatrix<Scalar> raw;          // |c_nm|^2, one value per waveguide
  RealMatrix<Scalar> probability;  // |c_nn|^2 on the diagonal, 2 |c_nm|^2 off it
};

template <typename Derived>
IntensityMap<typename Derived::RealScalar> intensity_map(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::RealScalar;
  IntensityMap<Scalar> out;
  out.raw = c.cwiseAbs2();
  out.probability = Scalar(2) * out.raw;
  out.probability.diagonal() = out.raw.diagonal();
  return out;
}

/// Diagonal plus unordered off-diagonal pairs of the probability map; equals norm(c).
template <typename Scalar>
Scalar total_probability(const IntensityMap<Scalar>& m) {
  return m.probability.template triangularView<Eigen::Upper>().toDenseMatrix().sum();
}

template <typename Scalar = double>
struct ObservableRecord {
  double t = 0;
  RealVector<Scalar> n_k;
  Scalar n_tot = 0;
  RealMatrix<Scalar> G2;
  RealMatrix<Scalar> g2;
  int g2_excluded = 0;
  Scalar g2_avg = 0;
  int g2_avg_excluded = 0;
  Scalar G2_avg = 0;
  RealMatrix<Scalar> intensity;
};

template <typename Derived>
ObservableRecord<typename Derived::RealScalar> observe(const Eigen::MatrixBase<Derived>& c, double t,
                                                       double floor = kDensityFloor) {
  using Scalar = typename Derived::RealScalar;
  ObservableRecord<Scalar> rec;
  rec.t = t;
  rec.n_k = site_density(c);
  rec.n_tot = rec.n_k.sum();
  auto corr = g2_matrix(c, floor);
  rec.G2 = std::move(corr.G2);
  rec.g2 = std::move(corr.g2);
  rec.g2_excluded = corr.excluded;
  const auto avg = g2_avg(c, floor);
  rec.g2_avg = avg.value;
  rec.g2_avg_excluded = avg.excluded;
  rec.G2_avg = G2_avg(c);
  rec.intensity = c.cwiseAbs2();
  return rec;
}

}  // namespace plsim

#endif  // PLSIM_OBSERVABLES_HPP
