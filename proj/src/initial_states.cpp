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

#include "plsim/initial_states.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "plsim/format.hpp"

namespace plsim {

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kNormWarnTolerance = 1e-6;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

std::string describe(const InitialStateSpec& spec) {
  return std::visit(
      overloaded{
          [](const LocalPairSpec& s) {
            return "local(" + std::to_string(s.site_i) + "," + std::to_string(s.site_j) + ")";
          },
          [](const HomogeneousSpec& s) { return "homogeneous(alpha_ts=" + format_double(s.alpha_ts) + ")"; },
          [](const FileSpec& s) { return "file(" + s.path.string() + ")"; },
      },
      spec);
}

LoadedState read_state(std::istream& in) {
  std::string line;
  int L = -1;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    const auto first = line.find_first_not_of(" \t");
    if (line.compare(first, 2, "L=") != 0) throw InvalidInput("state file: expected header 'L=<int>'");
    try {
      L = std::stoi(line.substr(first + 2));
    } catch (const std::exception&) {
      throw InvalidInput("state file: malformed header '" + line + "'");
    }
    break;
  }
  if (L < 2) throw InvalidInput("state file: missing header or L < 2");

  Grid c(L, L);
  int row = 0;
  while (row < L && std::getline(in, line)) {
    if (skip_line(line)) continue;
    std::istringstream tokens(line);
    std::vector<std::string> values;
    for (std::string tok; tokens >> tok;) values.push_back(tok);
    if (static_cast<int>(values.size()) != L)
      throw InvalidInput("state file: row " + std::to_string(row) + " has " +
                         std::to_string(values.size()) + " entries, expected " + std::to_string(L));
    for (int col = 0; col < L; ++col) c(row, col) = parse_complex(values[col]);
    ++row;
  }
  if (row != L) throw InvalidInput("state file: expected " + std::to_string(L) + " rows, got " + std::to_string(row));
  while (std::getline(in, line))
    if (!skip_line(line)) throw InvalidInput("state file: trailing data after matrix");

  if (!c.allFinite()) throw InvalidInput("state file: non-finite amplitude");
  if (max_asymmetry(c) > kSymmetryTolerance) throw InvalidInput("state file: asymmetric grid (c_nm != c_mn)");
  symmetrize(c);

  LoadedState out;
  out.input_norm = norm(c);
  if (out.input_norm == 0.0) throw InvalidInput("state file: zero norm");
  out.renormalized = std::abs(out.input_norm - 1.0) > kNormWarnTolerance;
  // Leave already-normalized grids bit-exact so files round-trip.
  out.grid = std::abs(out.input_norm - 1.0) > 1e-12 ? Grid(c / std::sqrt(out.input_norm)) : c;
  return out;
}

LoadedState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open state file '" + path.string() + "'");
  return read_state(in);
}

void write_state(std::ostream& out, const Grid& c) {
  out << "L=" << c.rows() << '\n';
  for (Eigen::Index n = 0; n < c.rows(); ++n) {
    for (Eigen::Index m = 0; m < c.cols(); ++m) {
      if (m > 0) out << ' ';
      out << format_complex(c(n, m));
    }
    out << '\n';
  }
}

void save_state(const std::filesystem::path& path, const Grid& c) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write state file '" + path.string() + "'");
  write_state(out, c);
}

Grid make_initial_state(const InitialStateSpec& spec, int L) {
  return std::visit(overloaded{
                        [L](const LocalPairSpec& s) { return local_pair<double>(L, s.site_i, s.site_j); },
                        [L](const HomogeneousSpec& s) { return homogeneous<double>(L, s.alpha_ts); },
                        [L](const FileSpec& s) {
                          Grid c = load_state(s.path).grid;
                          if (c.rows() != L)
                            throw InvalidInput("state file has L=" + std::to_string(c.rows()) +
                                               " but model has L=" + std::to_string(L));
                          return c;
                        },
                    },
                    spec);
}

}  // namespace plsim
