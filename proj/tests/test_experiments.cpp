// Copyright 2026 The qetulab developers
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

#include <cstdio>
#include <fstream>

#include "qetulab/experiments.hpp"

using namespace qetulab;
using namespace qetulab::experiments;

TEST_CASE("config parsing: keys, lists, comments, includes") {
  const char* inc_path = "/tmp/qetulab_test_include.cfg";
  {
    std::ofstream f(inc_path);
    f << "from_include = 42\n";
  }
  std::string text =
      "# comment\n"
      "alpha = 1.5\n"
      "name = hello\n"
      "grid = 1, 2.5, 3\n"
      "include " + std::string(inc_path) + "\n";
  Config cfg = Config::from_string(text);
  CHECK(cfg.num("alpha", 0.0) == doctest::Approx(1.5));
  CHECK(cfg.str("name", "") == "hello");
  CHECK(cfg.integer("from_include", 0) == 42);
  auto grid = cfg.list("grid", {});
  REQUIRE(grid.size() == 3);
  CHECK(grid[1] == doctest::Approx(2.5));
  CHECK(cfg.num("missing", 7.0) == 7.0);
  CHECK_THROWS_AS(Config::from_string("oops-no-equals\n"), std::runtime_error);
  std::remove(inc_path);
}

TEST_CASE("table output is stable and carries the expected header") {
  const std::string csv = run_table_params();
  CHECK(csv.rfind("n,mu,delta,sigma_plus,sigma_minus,c1,c2,gamma\n", 0) == 0);
  CHECK(csv.find("\n2,0.7442,") != std::string::npos);
  CHECK(csv.find("\n8,0.2394,") != std::string::npos);
  CHECK(run_table_params() == csv);  // deterministic
}

TEST_CASE("convergence sweep emits decreasing errors") {
  Config cfg = Config::from_string("degrees = 20,40\n");
  const std::string csv = run_convergence(cfg);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  double prev = 1e9;
  int rows = 0;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const double eps = std::stod(line.substr(comma + 1));
    CHECK(eps < prev);
    prev = eps;
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("energy-estimate record audits and reports a trace") {
  Config cfg = Config::from_string(
      "model = random\ndim = 24\nseed_hamiltonian = 3\ngamma = 0.6\n"
      "epsilon = 5e-3\nseed = 4\n");
  const std::string json = run_energy_estimate(cfg);
  CHECK(json.find("\"value\"") != std::string::npos);
  CHECK(json.find("\"trace\"") != std::string::npos);
  CHECK(json.find("\"failed\": false") != std::string::npos);
}

TEST_CASE("query audit accepts consistent traces and flags tampering") {
  groundstate::EnergyEstimate est;
  est.trace.push_back({0, 1, 0.5, 0.1, 10, 7, 1, 70});
  est.trace.push_back({0, 1, 0.5, 0.1, 12, 5, 0, 60});
  est.total_queries = 130;
  CHECK(audit_energy_estimate(est));
  est.total_queries = 131;
  CHECK_FALSE(audit_energy_estimate(est));
}
