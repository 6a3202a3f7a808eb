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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qetulab/groundstate.hpp"
#include "qetulab/qpe.hpp"

namespace qetulab::experiments {

// Flat key-value configuration with `include <path>` support. Values stay
// strings until queried; list values are comma separated. Seeds must be
// explicit in the config (or defaulted by the experiment), never wall clock.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::vector<double> list(const std::string& key,
                           const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> values_;
};

int thread_count();  // QETULAB_THREADS, defaulting to the hardware count

// System-parameter table: n in {2,4,6,8}, g = 4, eta = 0.1. Columns
// n,mu,delta,sigma_plus,sigma_minus,c1,c2,gamma.
std::string run_table_params();

// Min-max convergence sweep: columns d,eps_star for the reference
// shifted-sign geometry (eta=0.1, mu=1.0, delta=0.4, c=0.999).
std::string run_convergence(const Config& cfg);

struct Fig4Row {
  double gamma = 0.0;
  double eps = 0.0;
  std::string method;
  double mean_queries = 0.0;
  double mean_abs_error = 0.0;
  int seeds = 0;
};

struct Fig4Output {
  std::vector<Fig4Row> rows;
  std::string csv;
  std::string summary_json;
};

// Query-count comparison on a random-spectrum Hamiltonian: the short-depth
// path (Monte-Carlo BAE), the walk-operator path, and the semi-classical
// QPE baseline, swept over gamma and epsilon.
Fig4Output run_fig4_comparison(const Config& cfg);

struct Fig5Row {
  int n = 0;
  int d = 0;
  double r_dplz = 0.0;
  double energy_mean = 0.0;
  double energy_std = 0.0;
  double exact = 0.0;
  double alpha_dem = 0.0;
  int repetitions = 0;
};

struct Fig5Output {
  std::vector<Fig5Row> rows;
  std::string csv;
};

// Noisy TFIM energy estimation: the control-free circuit with first-order
// Trotter steps, measured through bitstring histograms, swept over system
// size, degree, and depolarizing rate.
Fig5Output run_fig5_noise(const Config& cfg);

// Single energy-estimate run driven by a config (model, gamma, epsilon,
// method, seed); returns the JSON record including the bisection trace.
std::string run_energy_estimate(const Config& cfg);

// Ground-state preparation run; returns a JSON record.
std::string run_prep(const Config& cfg);

// Audit: engine-level query counters against the analytic degree sums in
// the trace. Returns false on mismatch (CLI maps this to exit code 2).
bool audit_energy_estimate(const groundstate::EnergyEstimate& est);

}  // namespace qetulab::experiments
