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

#include <sstream>

#include <json.hpp>

#include "plsim/config.hpp"
#include "plsim/format.hpp"
#include "plsim/initial_states.hpp"
#include "plsim/output.hpp"

using namespace plsim;

TEST_CASE("format_double round-trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1e-300, 6.02214076e23, 0.7071067811865476, 1.0 / 3.0}) {
    const std::string s = format_double(x);
    REQUIRE(parse_double(s) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS_AS(parse_double("1.0x"), InvalidInput);
  CHECK_THROWS_AS(parse_double(""), InvalidInput);
}

TEST_CASE("complex tokens") {
  CHECK(format_complex({0.5, -0.25}) == "0.5-0.25j");
  CHECK(format_complex({0.5, 0.25}) == "0.5+0.25j");
  CHECK(parse_complex("0.5-0.25j") == std::complex<double>(0.5, -0.25));
  CHECK(parse_complex("-1e-3+2E+2j") == std::complex<double>(-1e-3, 200));
  CHECK(parse_complex("3j") == std::complex<double>(0, 3));
  CHECK(parse_complex("-3j") == std::complex<double>(0, -3));
  CHECK(parse_complex("2.5") == std::complex<double>(2.5, 0));
  CHECK_THROWS_AS(parse_complex("1+j"), InvalidInput);
}

TEST_CASE("config file keys and overrides") {
  RunConfig cfg;
  std::istringstream in(
      "# lossy local pair\n"
      "L = 9\n"
      "kappa = 1\n"
      "gamma = 10   # strong loss\n"
      "gamma-nn = 0.5\n"
      "init = homogeneous\n"
      "alpha_ts = 0.8\n"
      "t_final = 2\n"
      "dt = 0.0005\n"
      "snapshot_times = 0, 1, 2\n"
      "format = json\n");
  read_config(in, cfg);
  CHECK(cfg.model.L == 9);
  CHECK(cfg.model.gamma == 10.0);
  CHECK(cfg.model.gamma_nn == 0.5);
  CHECK(cfg.init == InitKind::homogeneous);
  CHECK(cfg.alpha_ts == 0.8);
  CHECK(cfg.integrator.dt == 0.0005);
  CHECK(cfg.outputs.snapshot_times == std::vector<double>{0, 1, 2});
  CHECK(cfg.outputs.format == OutputFormat::json);
  CHECK_NOTHROW(validate_config(cfg));

  apply_setting(cfg, "gamma", "2");  // a flag applied after the file wins
  CHECK(cfg.model.gamma == 2.0);

  CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), InvalidInput);
  CHECK_THROWS_AS(apply_setting(cfg, "L", "nine"), InvalidInput);
  CHECK_THROWS_AS(apply_setting(cfg, "method", "euler"), InvalidInput);
  std::istringstream bad("L 9\n");
  CHECK_THROWS_AS(read_config(bad, cfg), InvalidInput);
}

TEST_CASE("validate_config cross-field checks") {
  RunConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  cfg.outputs.snapshot_times = {4.0};
  CHECK_THROWS_AS(validate_config(cfg), InvalidInput);
  cfg.outputs.snapshot_times = {};
  cfg.sites = std::pair{3, 3};
  CHECK_THROWS_AS(validate_config(cfg), InvalidInput);
  cfg.sites = std::pair{0, 15};
  CHECK_THROWS_AS(validate_config(cfg), InvalidInput);
  cfg.sites.reset();
  cfg.model.gamma = -1;
  CHECK_THROWS_AS(validate_config(cfg), InvalidInput);
  cfg.model.gamma = 0;
  cfg.init = InitKind::file;
  CHECK_THROWS_AS(validate_config(cfg), InvalidInput);
}

TEST_CASE("initial_spec defaults to the central pair") {
  RunConfig cfg;
  const auto spec = initial_spec(cfg);
  const auto* lp = std::get_if<LocalPairSpec>(&spec);
  REQUIRE(lp != nullptr);
  CHECK(lp->site_i == 6);
  CHECK(lp->site_j == 7);
}

TEST_CASE("metadata records parameters and boundary") {
  RunConfig cfg;
  cfg.model.gamma = 10;
  const std::string line = metadata_line(describe_config(cfg));
  CHECK(line.rfind("# generated-by=plsim-", 0) == 0);
  CHECK(line.find("gamma=10") != std::string::npos);
  CHECK(line.find("boundary=open") != std::string::npos);
  CHECK(line.find("init=local(6,7)") != std::string::npos);
  CHECK(line.find("dt=0.001") != std::string::npos);
}

TEST_CASE("matrix snapshot format") {
  RealMatrix<double> m(2, 2);
  m << 1.0, std::nan(""), 0.25, 0.5;
  std::ostringstream out;
  write_matrix(out, m, 3.0, MatrixKind::g2, 1, OutputFormat::csv);
  CHECK(out.str() == "# L=2 t=3 kind=g2 excluded=1\n1,nan\n0.25,0.5\n");

  std::ostringstream js;
  write_matrix(js, m, 3.0, MatrixKind::g2, 1, OutputFormat::json);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["kind"] == "g2");
  CHECK(j["excluded"] == 1);
  CHECK(j["data"][0][1].is_null());
  CHECK(j["data"][1][0] == 0.25);
}

TEST_CASE("timeseries format") {
  ObservableRecord<double> r;
  r.t = 0.5;
  r.n_k = RealVector<double>::Constant(2, 0.25);
  r.n_tot = 0.5;
  r.g2_avg = 0.125;
  r.G2_avg = 0.0625;
  std::ostringstream out;
  write_timeseries(out, {{"L", "2"}}, {r}, OutputFormat::csv);
  std::istringstream lines(out.str());
  std::string meta, header, row;
  std::getline(lines, meta);
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(meta == std::string("# generated-by=plsim-") + kVersion + " L=2");
  CHECK(header == "t,n_tot,g2_avg,G2_avg,n_0,n_1");
  CHECK(row == "0.5,0.5,0.125,0.0625,0.25,0.25");

  std::ostringstream js;
  write_timeseries(js, {{"L", "2"}}, {r}, OutputFormat::json);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["columns"].size() == 6);
  CHECK(j["rows"][0][2] == 0.125);
  CHECK(j["metadata"]["L"] == "2");
}

TEST_CASE("same_output ignores only the generated-by field") {
  const std::string a = "# generated-by=plsim-0.1.0 L=2\n1,2\n";
  const std::string b = "# generated-by=plsim-9.9.9 L=2\n1,2\n";
  const std::string c = "# generated-by=plsim-0.1.0 L=3\n1,2\n";
  CHECK(same_output(a, b));
  CHECK_FALSE(same_output(a, c));
  CHECK(same_output("{\"generated-by\": \"plsim-0.1.0\", \"L\": 2}", "{\"generated-by\": \"plsim-1\", \"L\": 2}"));
}
