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

#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "plsim/initial_states.hpp"
#include "plsim/observables.hpp"
#include "test_support.hpp"

using namespace plsim;

TEST_CASE("local_pair puts 1/sqrt(2) on both orderings") {
  const Grid c = local_pair(15, 7, 8);
  CHECK(c(7, 8) == std::complex<double>(M_SQRT1_2));
  CHECK(c(8, 7) == std::complex<double>(M_SQRT1_2));
  CHECK(c.cwiseAbs().sum() == doctest::Approx(2 * M_SQRT1_2));
  CHECK(std::abs(norm(c) - 1.0) <= 1e-15);
  CHECK(g2_avg(c).value == 0.0);

  const Grid small = local_pair(2, 0, 1);
  Grid expected(2, 2);
  expected << 0, M_SQRT1_2, M_SQRT1_2, 0;
  CHECK(small == expected);
}

TEST_CASE("local_pair rejects coincident or out-of-range sites") {
  CHECK_THROWS_AS(local_pair(5, 2, 2), InvalidInput);
  CHECK_THROWS_AS(local_pair(5, -1, 2), InvalidInput);
  CHECK_THROWS_AS(local_pair(5, 0, 5), InvalidInput);
  CHECK_THROWS_AS(local_pair(1, 0, 0), InvalidInput);
}

TEST_CASE("central pair default") {
  CHECK(central_pair(15) == std::pair{6, 7});
  CHECK(central_pair(2) == std::pair{0, 1});
  CHECK(central_pair(4) == std::pair{1, 2});
}

// Reference: expand sqrt(a)|TS> + sqrt(1-a)|SS> over Fock states by applying the
// creation operators, then read off grid amplitudes via <2_n|psi> = c_nn and
// <1_n 1_m|psi> = sqrt(2) c_nm.
static Grid homogeneous_by_fock_matching(int L, double alpha) {
  std::map<std::pair<int, int>, double> psi;  // (n, m), n <= m
  const double ts_norm = std::sqrt(2.0 / (L * (L - 1.0)));
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) psi[{i, j}] += std::sqrt(alpha) * ts_norm;  // a_i^+ a_j^+|0> = |1_i 1_j>
  const double ss_norm = 1.0 / std::sqrt(2.0 * L);
  for (int i = 0; i < L; ++i) psi[{i, i}] += std::sqrt(1 - alpha) * ss_norm * std::sqrt(2.0);  // (a_i^+)^2|0> = sqrt2|2_i>
  Grid c = Grid::Zero(L, L);
  for (const auto& [nm, amp] : psi) {
    const auto [n, m] = nm;
    if (n == m) {
      c(n, n) = amp;
    } else {
      c(n, m) = c(m, n) = amp / std::sqrt(2.0);
    }
  }
  return c;
}

TEST_CASE("homogeneous matches the Fock-coefficient expansion") {
  const Grid c = homogeneous(15, 0.9);
  // Frozen from the expansion: sqrt(0.1/15), sqrt(0.9/210).
  CHECK(c(3, 3).real() == doctest::Approx(0.0816496580927726).epsilon(1e-14));
  CHECK(c(2, 9).real() == doctest::Approx(0.0654653670707977).epsilon(1e-14));
  CHECK(std::abs(norm(c) - 1.0) <= 1e-12);

  for (int L : {2, 3, 7, 15})
    for (double a : {0.0, 0.3, 0.9, 1.0})
      REQUIRE((homogeneous(L, a) - homogeneous_by_fock_matching(L, a)).cwiseAbs().maxCoeff() <= 1e-15);

  const Grid pure_ts = homogeneous(4, 1.0);
  CHECK(pure_ts.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(pure_ts(0, 3).real() == doctest::Approx(std::sqrt(1.0 / 12)).epsilon(1e-15));
}

TEST_CASE("homogeneous rejects alpha outside [0, 1]") {
  CHECK_THROWS_AS(homogeneous(5, -0.1), InvalidInput);
  CHECK_THROWS_AS(homogeneous(5, 1.1), InvalidInput);
  CHECK_THROWS_AS(homogeneous(5, std::nan("")), InvalidInput);
}

TEST_CASE("property: constructors are normalized, symmetric, and homogeneous density is uniform") {
  for (int L = 2; L <= 20; ++L) {
    for (double a : {0.0, 0.5, 0.9, 1.0}) {
      const Grid c = homogeneous(L, a);
      REQUIRE(std::abs(norm(c) - 1.0) <= 1e-12);
      REQUIRE(max_asymmetry(c) == 0.0);
      REQUIRE((site_density(c).array() - 1.0 / L).abs().maxCoeff() <= 1e-14);
      REQUIRE(std::abs(g2_avg(c).value - (1 - a) * L / 2.0) <= 1e-12);
    }
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) {
        if (i == j) continue;
        const Grid c = local_pair(L, i, j);
        REQUIRE(std::abs(norm(c) - 1.0) <= 1e-12);
        REQUIRE(max_asymmetry(c) == 0.0);
      }
  }
}

TEST_CASE("state file round trip") {
  const Grid c = local_pair(15, 7, 8);
  std::stringstream ss;
  write_state(ss, c);
  const LoadedState back = read_state(ss);
  CHECK(back.grid == c);
  CHECK_FALSE(back.renormalized);

  std::mt19937_64 rng(5);
  const Grid r = testing::random_symmetric(6, rng);
  std::stringstream s2;
  write_state(s2, r);
  CHECK((read_state(s2).grid - r).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("state file errors and renormalization") {
  {
    std::istringstream in("L=2\n0 1\n0 0\n");
    CHECK_THROWS_WITH_AS(read_state(in), doctest::Contains("asymmetric"), InvalidInput);
  }
  {
    // norm 2: every entry scaled by sqrt(2)
    std::istringstream in("# doubled local pair\nL=2\n0 1+0j\n1-0j 0\n");
    const LoadedState s = read_state(in);
    CHECK(s.renormalized);
    CHECK(s.input_norm == doctest::Approx(2.0));
    CHECK(std::abs(norm(s.grid) - 1.0) <= 1e-15);
    CHECK(s.grid(0, 1).real() == doctest::Approx(M_SQRT1_2));
  }
  {
    std::istringstream in("L=2\n0 0\n0 0\n");
    CHECK_THROWS_WITH_AS(read_state(in), doctest::Contains("zero norm"), InvalidInput);
  }
  {
    std::istringstream in("L=3\n0 1 0\n1 0 0\n");
    CHECK_THROWS_AS(read_state(in), InvalidInput);
  }
  {
    std::istringstream in("L=2\n0 1 0\n1 0\n");
    CHECK_THROWS_AS(read_state(in), InvalidInput);
  }
  {
    std::istringstream in("L=2\n0 x\nx 0\n");
    CHECK_THROWS_AS(read_state(in), InvalidInput);
  }
  {
    std::istringstream in("0 1\n1 0\n");
    CHECK_THROWS_AS(read_state(in), InvalidInput);
  }
  {
    std::istringstream in("L=2\n0.5+0.5j 0.5-0.5j\n0.5-0.5j 0\n");
    const LoadedState s = read_state(in);
    CHECK(s.grid(0, 1).imag() < 0);
  }
}

TEST_CASE("make_initial_state dispatches on the spec") {
  CHECK(make_initial_state(LocalPairSpec{1, 2}, 4) == local_pair(4, 1, 2));
  CHECK(make_initial_state(HomogeneousSpec{0.5}, 4) == homogeneous(4, 0.5));

  const auto path = std::filesystem::temp_directory_path() / "plsim_state_test.txt";
  save_state(path, local_pair(5, 0, 4));
  CHECK(make_initial_state(FileSpec{path}, 5) == local_pair(5, 0, 4));
  CHECK_THROWS_AS(make_initial_state(FileSpec{path}, 6), InvalidInput);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_state(path), InvalidInput);
}
