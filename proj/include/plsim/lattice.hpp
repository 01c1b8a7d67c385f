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

// Model parameters and the coupled-mode generator of the L x L waveguide
// array. Grid entry (n, m) is the amplitude of the two-boson configuration
// with one particle on site n and one on site m of the emulated 1D chain.

#ifndef PLSIM_LATTICE_HPP
#define PLSIM_LATTICE_HPP

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "plsim/errors.hpp"

namespace plsim {

enum class Boundary { open };

inline std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::open:
      return "open";
  }
  return "unknown";
}

/// Rates share one unit (inverse time); with kappa = 1 time is measured in 1/kappa.
template <typename Scalar = double>
struct ModelParams {
  int L = 15;
  Scalar kappa = 1;
  Scalar beta_r = 0;
  Scalar gamma = 0;     // on-site two-body loss
  Scalar gamma_nn = 0;  // nearest-neighbour two-body loss
  Boundary boundary = Boundary::open;
};

template <typename Scalar>
using AmplitudeGrid = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Grid = AmplitudeGrid<double>;
using Params = ModelParams<double>;

/// Returns `p` unchanged, or throws InvalidInput naming the first violated invariant.
template <typename Scalar>
const ModelParams<Scalar>& validate_params(const ModelParams<Scalar>& p) {
  using std::isfinite;
  if (p.L < 2) throw InvalidInput("L too small: need L >= 2, got " + std::to_string(p.L));
  if (!isfinite(p.kappa) || !isfinite(p.beta_r) || !isfinite(p.gamma) || !isfinite(p.gamma_nn))
    throw InvalidInput("non-finite rate");
  if (p.kappa < 0) throw InvalidInput("negative coupling kappa");
  if (p.gamma < 0) throw InvalidInput("negative loss gamma");
  if (p.gamma_nn < 0) throw InvalidInput("negative loss gamma_nn");
  return p;
}

template <typename Derived>
void check_grid_shape(const Eigen::MatrixBase<Derived>& c, int L) {
  if (c.rows() != L || c.cols() != L)
    throw InvalidInput("dimension mismatch: grid is " + std::to_string(c.rows()) + "x" +
                       std::to_string(c.cols()) + ", model has L=" + std::to_string(L));
}

/// Sum over all ordered pairs of |c_nm|^2. Equals <psi|psi> of the two-boson state.
template <typename Derived>
typename Derived::RealScalar norm(const Eigen::MatrixBase<Derived>& c) {
  return c.squaredNorm();
}

template <typename Derived>
typename Derived::RealScalar max_asymmetry(const Eigen::MatrixBase<Derived>& c) {
  if (c.size() == 0) return 0;
  return (c - c.transpose()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void symmetrize(Eigen::MatrixBase<Derived>& c) {
  c = (c + c.transpose().eval()) / typename Derived::RealScalar(2);
}

/// dc/dt of the lossy coupled-mode equations, open boundary.
///   dc/dt = -i (beta_r - i gamma) delta_{n,m} c - gamma_nn delta_{|n-m|,1} c
///           + i kappa (c_{n,m+1} + c_{n,m-1} + c_{n+1,m} + c_{n-1,m})
template <typename Derived, typename Scalar>
AmplitudeGrid<Scalar> rhs(const Eigen::MatrixBase<Derived>& c, const ModelParams<Scalar>& p) {
  using Complex = std::complex<Scalar>;
  check_grid_shape(c, p.L);
  const Eigen::Index L = p.L;

  AmplitudeGrid<Scalar> hop = AmplitudeGrid<Scalar>::Zero(L, L);
  hop.topRows(L - 1) += c.bottomRows(L - 1);
  hop.bottomRows(L - 1) += c.topRows(L - 1);
  hop.leftCols(L - 1) += c.rightCols(L - 1);
  hop.rightCols(L - 1) += c.leftCols(L - 1);

  AmplitudeGrid<Scalar> out = Complex(0, p.kappa) * hop;
  out.diagonal() += Complex(-p.gamma, -p.beta_r) * c.diagonal();
  if (p.gamma_nn != Scalar(0)) {
    out.diagonal(1) -= p.gamma_nn * c.diagonal(1);
    out.diagonal(-1) -= p.gamma_nn * c.diagonal(-1);
  }
  return out;
}

/// Row-major flattening used by the dense generator: k = n * L + m.
inline Eigen::Index flat_index(Eigen::Index n, Eigen::Index m, Eigen::Index L) { return n * L + m; }

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> flatten(const AmplitudeGrid<Scalar>& c) {
  const Eigen::Index L = c.rows();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> v(L * L);
  for (Eigen::Index n = 0; n < L; ++n)
    for (Eigen::Index m = 0; m < L; ++m) v(flat_index(n, m, L)) = c(n, m);
  return v;
}

template <typename Scalar>
AmplitudeGrid<Scalar> unflatten(const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>& v,
                                Eigen::Index L) {
  if (v.size() != L * L) throw InvalidInput("dimension mismatch: vector length is not L^2");
  AmplitudeGrid<Scalar> c(L, L);
  for (Eigen::Index n = 0; n < L; ++n)
    for (Eigen::Index m = 0; m < L; ++m) c(n, m) = v(flat_index(n, m, L));
  return c;
}

/// The L^2 x L^2 matrix A with d vec(c)/dt = A vec(c), in the flat_index ordering.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> assemble_generator(
    const ModelParams<Scalar>& p) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index L = p.L;
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> A =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Zero(L * L, L * L);
  const Complex hop(0, p.kappa);
  for (Eigen::Index n = 0; n < L; ++n) {
    for (Eigen::Index m = 0; m < L; ++m) {
      const Eigen::Index k = flat_index(n, m, L);
      if (n == m) A(k, k) += Complex(-p.gamma, -p.beta_r);
      if (std::abs(n - m) == 1) A(k, k) += Complex(-p.gamma_nn, 0);
      if (m + 1 < L) A(k, flat_index(n, m + 1, L)) += hop;
      if (m > 0) A(k, flat_index(n, m - 1, L)) += hop;
      if (n + 1 < L) A(k, flat_index(n + 1, m, L)) += hop;
      if (n > 0) A(k, flat_index(n - 1, m, L)) += hop;
    }
  }
  return A;
}

}  // namespace plsim

#endif  // PLSIM_LATTICE_HPP
