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

#include "plsim/output.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "plsim/format.hpp"

namespace plsim {

namespace {

using nlohmann::ordered_json;

ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

ordered_json metadata_json(const Metadata& meta) {
  ordered_json j = ordered_json::object();
  j["generated-by"] = std::string("plsim-") + kVersion;
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

std::string drop_generated_by(const std::string& text) {
  static const std::regex field(R"(generated-by"?\s*[=:]\s*"?[^\s",]*"?,?)");
  return std::regex_replace(text, field, "");
}

}  // namespace

std::string metadata_line(const Metadata& meta) {
  std::string line = std::string("# generated-by=plsim-") + kVersion;
  for (const auto& [k, v] : meta) line += " " + k + "=" + v;
  return line;
}

std::string to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::G2:
      return "G2";
    case MatrixKind::g2:
      return "g2";
    case MatrixKind::intensity:
      return "intensity";
  }
  return "unknown";
}

void write_timeseries(std::ostream& out, const Metadata& meta, const std::vector<ObservableRecord<double>>& rows,
                      OutputFormat format) {
  const Eigen::Index L = rows.empty() ? 0 : rows.front().n_k.size();
  std::vector<std::string> columns{"t", "n_tot", "g2_avg", "G2_avg"};
  for (Eigen::Index k = 0; k < L; ++k) columns.push_back("n_" + std::to_string(k));

  if (format == OutputFormat::json) {
    ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["columns"] = columns;
    ordered_json data = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row = ordered_json::array({number(r.t), number(r.n_tot), number(r.g2_avg), number(r.G2_avg)});
      for (Eigen::Index k = 0; k < L; ++k) row.push_back(number(r.n_k(k)));
      data.push_back(std::move(row));
    }
    j["rows"] = std::move(data);
    out << j.dump(1) << '\n';
    return;
  }

  out << metadata_line(meta) << '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.n_tot) << ',' << format_double(r.g2_avg) << ','
        << format_double(r.G2_avg);
    for (Eigen::Index k = 0; k < L; ++k) out << ',' << format_double(r.n_k(k));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const RealMatrix<double>& m, double t, MatrixKind kind, int excluded,
                  OutputFormat format) {
  if (format == OutputFormat::json) {
    ordered_json j;
    j["L"] = m.rows();
    j["t"] = t;
    j["kind"] = to_string(kind);
    if (kind == MatrixKind::g2) j["excluded"] = excluded;
    ordered_json data = ordered_json::array();
    for (Eigen::Index n = 0; n < m.rows(); ++n) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(number(m(n, k)));
      data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    out << j.dump() << '\n';
    return;
  }
  out << "# L=" << m.rows() << " t=" << format_double(t) << " kind=" << to_string(kind);
  if (kind == MatrixKind::g2) out << " excluded=" << excluded;
  out << '\n';
  for (Eigen::Index n = 0; n < m.rows(); ++n) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? "," : "") << format_double(m(n, k));
    out << '\n';
  }
}

std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const ObservableRecord<double>& rec,
                                                  OutputFormat format) {
  std::filesystem::create_directories(dir);
  const std::string ext = format == OutputFormat::csv ? ".csv" : ".json";
  std::vector<std::filesystem::path> paths;
  auto emit = [&](MatrixKind kind, const RealMatrix<double>& m, int excluded) {
    const auto path = dir / (to_string(kind) + "_t" + format_double(rec.t) + ext);
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
    write_matrix(out, m, rec.t, kind, excluded, format);
    paths.push_back(path);
  };
  emit(MatrixKind::G2, rec.G2, 0);
  emit(MatrixKind::g2, rec.g2, rec.g2_excluded);
  emit(MatrixKind::intensity, rec.intensity, 0);
  return paths;
}

void write_sweep(std::ostream& out, const Metadata& meta, SweepParam param, const std::vector<SweepRow>& rows,
                 OutputFormat format) {
  if (format == OutputFormat::json) {
    ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["columns"] = {to_string(param), "g2_avg", "n_tot"};
    ordered_json data = ordered_json::array();
    for (const auto& r : rows) data.push_back({number(r.value), number(r.g2_avg), number(r.n_tot)});
    j["rows"] = std::move(data);
    out << j.dump(1) << '\n';
    return;
  }
  out << metadata_line(meta) << '\n';
  out << to_string(param) << ",g2_avg,n_tot\n";
  for (const auto& r : rows)
    out << format_double(r.value) << ',' << format_double(r.g2_avg) << ',' << format_double(r.n_tot) << '\n';
}

void write_report(std::ostream& out, const Metadata& meta, const EquivalenceReport& rep, double threshold,
                  OutputFormat format) {
  const std::vector<std::pair<std::string, double>> fields{
      {"max_block_deviation", rep.max_block_deviation},
      {"max_density_deviation", rep.max_density_deviation},
      {"max_G2_deviation", rep.max_G2_deviation},
      {"max_vacuum_coherence", rep.max_vacuum_coherence},
      {"max_population_norm_deviation", rep.max_population_norm_deviation},
      {"max_purity_deviation", rep.max_purity_deviation},
      {"max_trace_deviation", rep.max_trace_deviation},
      {"max_hermiticity_deviation", rep.max_hermiticity_deviation},
      {"min_eigenvalue", rep.min_eigenvalue},
  };
  const bool pass = rep.passes(threshold);
  if (format == OutputFormat::json) {
    ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["samples"] = rep.samples;
    j["t_final"] = rep.t_final;
    for (const auto& [k, v] : fields) j[k] = number(v);
    j["threshold"] = threshold;
    j["pass"] = pass;
    out << j.dump(1) << '\n';
    return;
  }
  out << metadata_line(meta) << '\n';
  out << "samples=" << rep.samples << " t_final=" << format_double(rep.t_final) << '\n';
  for (const auto& [k, v] : fields) out << k << '=' << format_double(v) << '\n';
  out << "threshold=" << format_double(threshold) << '\n';
  out << "result=" << (pass ? "PASS" : "FAIL") << '\n';
}

bool same_output(const std::string& a, const std::string& b) { return drop_generated_by(a) == drop_generated_by(b); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace plsim
