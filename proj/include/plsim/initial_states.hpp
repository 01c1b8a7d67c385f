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

#ifndef PLSIM_INITIAL_STATES_HPP
#define PLSIM_INITIAL_STATES_HPP

#include <cmath>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "plsim/lattice.hpp"

namespace plsim {

/// Default position of the localized pair: the two central sites.
inline std::pair<int, int> central_pair(int L) { return {L / 2 - 1, L / 2}; }

/// Two bosons on distinct sites i and j: c_ij = c_ji = 1/sqrt(2).
template <typename Scalar = double>
AmplitudeGrid<Scalar> local_pair(int L, int i, int j) {
  if (L < 2) throw InvalidInput("L too small: need L >= 2, got " + std::to_string(L));
  if (i < 0 || j < 0 || i >= L || j >= L)
    throw InvalidInput("pair site out of range [0, " + std::to_string(L) + ")");
  if (i == j) throw InvalidInput("pair sites must be distinct, got i = j = " + std::to_string(i));
  AmplitudeGrid<Scalar> c = AmplitudeGrid<Scalar>::Zero(L, L);
  const Scalar a = std::sqrt(Scalar(0.5));
  c(i, j) = a;
  c(j, i) = a;
  return c;
}

/// sqrt(alpha) |TS> + sqrt(1 - alpha) |SS>: a uniform superposition of separated
/// pairs (weight alpha_ts) and of doubly occupied sites (weight 1 - alpha_ts).
template <typename Scalar = double>
AmplitudeGrid<Scalar> homogeneous(int L, Scalar alpha_ts) {
  if (L < 2) throw InvalidInput("L too small: need L >= 2, got " + std::to_string(L));
  if (!(alpha_ts >= 0 && alpha_ts <= 1))
    throw InvalidInput("alpha_ts out of range [0, 1]: " + std::to_string(double(alpha_ts)));
  const Scalar diag = std::sqrt((Scalar(1) - alpha_ts) / Scalar(L));
  const Scalar off = std::sqrt(alpha_ts / Scalar(L * (L - 1)));
  AmplitudeGrid<Scalar> c = AmplitudeGrid<Scalar>::Constant(L, L, off);
  c.diagonal().setConstant(diag);
  return c;
}

struct LocalPairSpec {
  int site_i;
  int site_j;
};
struct HomogeneousSpec {
  double alpha_ts;
};
struct FileSpec {
  std::filesystem::path path;
};

using InitialStateSpec = std::variant<LocalPairSpec, HomogeneousSpec, FileSpec>;

std::string describe(const InitialStateSpec& spec);

struct LoadedState {
  Grid grid;
  double input_norm = 1.0;
  bool renormalized = false;
};

/// Text format:
///   L=<int>
///   <L rows of L whitespace-separated complex numbers written as re+imj / re-imj>
/// Blank lines and lines starting with '#' are ignored. Renormalizes to unit norm;
/// `renormalized` is set when the input norm was off by more than 1e-6.
LoadedState read_state(std::istream& in);
LoadedState load_state(const std::filesystem::path& path);

void write_state(std::ostream& out, const Grid& c);
void save_state(const std::filesystem::path& path, const Grid& c);

/// Builds the grid for `spec` (file states are loaded and must match L).
Grid make_initial_state(const InitialStateSpec& spec, int L);

}  // namespace plsim

#endif  // PLSIM_INITIAL_STATES_HPP
