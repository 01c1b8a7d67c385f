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

// Plot-ready file writers. Output is deterministic: the same inputs give the
// same bytes, apart from the generated-by field on the metadata line.

#ifndef PLSIM_OUTPUT_HPP
#define PLSIM_OUTPUT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "plsim/config.hpp"
#include "plsim/lindblad.hpp"
#include "plsim/observables.hpp"

namespace plsim {

inline constexpr const char* kVersion = "0.1.0";

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "# generated-by=plsim-<version> key=value key=value ..."
std::string metadata_line(const Metadata& meta);

enum class MatrixKind { G2, g2, intensity };
std::string to_string(MatrixKind k);

/// Columns t, n_tot, g2_avg, G2_avg, n_0 .. n_{L-1}; one row per sample.
void write_timeseries(std::ostream& out, const Metadata& meta, const std::vector<ObservableRecord<double>>& rows,
                      OutputFormat format);

/// CSV: "# L=<int> t=<real> kind=<G2|g2|intensity>[ excluded=<n>]" then L comma-separated rows, "nan"
/// for undefined entries. JSON: the same fields with null for undefined entries.
void write_matrix(std::ostream& out, const RealMatrix<double>& m, double t, MatrixKind kind, int excluded,
                  OutputFormat format);

/// Writes G2, g2 and intensity for one record into `dir` as <kind>_t<t>.<ext>; returns the paths.
std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const ObservableRecord<double>& rec,
                                                  OutputFormat format);

struct SweepRow {
  double value = 0;
  double g2_avg = 0;
  double n_tot = 0;
};

void write_sweep(std::ostream& out, const Metadata& meta, SweepParam param, const std::vector<SweepRow>& rows,
                 OutputFormat format);

void write_report(std::ostream& out, const Metadata& meta, const EquivalenceReport& rep, double threshold,
                  OutputFormat format);

/// Text equality after dropping the generated-by field from metadata lines.
bool same_output(const std::string& a, const std::string& b);

std::string read_file(const std::filesystem::path& path);

}  // namespace plsim

#endif  // PLSIM_OUTPUT_HPP
