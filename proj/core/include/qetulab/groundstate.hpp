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
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "qetulab/bae.hpp"
#include "qetulab/engine.hpp"

namespace qetulab::groundstate {

enum class BaeMethod { MonteCarlo, QetuWalk };

// Step polynomials repeat across seeds and sweeps (the bisection thresholds
// live on a ternary lattice); a shared cache amortizes the construction.
class StepCache {
 public:
  const cheb::StepBuild& get(double theta0, double halfwidth, double c,
                             double eps, int lp_budget);

 private:
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>,
           cheb::StepBuild>
      cache_;
  std::mutex mutex_;
};

struct BisectionConfig {
  double eta = M_PI / 4;
  double gamma = 0.5;    // overlap lower bound
  double epsilon = 1e-3;
  double vartheta = 0.1;
  BaeMethod method = BaeMethod::MonteCarlo;
  double c = 0.999;      // plateau constant of the step polynomials
  // Step-polynomial accuracy cap. The decision thresholds are always the
  // working-precision values gamma1 = gamma c/(2(gamma+1)) and
  // gamma2 = (gamma+2) gamma c/(2(gamma+1)); the polynomial error target is
  // min(gamma1, approx_budget), so any value <= gamma1 is valid. 0 picks
  // the default cap 0.08, which keeps the polynomial degrees independent of
  // gamma across typical sweeps.
  double approx_budget = 0.0;
  int lp_budget = 600;   // step polynomials above this degree use the
                         // mollified-step construction
  std::uint64_t seed = 0;
  // when set, bracket violations against this reference retry once with
  // doubled shots and then flag the run as failed
  std::optional<double> validate_lambda0;
  StepCache* cache = nullptr;  // optional shared polynomial cache
};

struct BisectionIteration {
  double l = 0.0, r = 0.0;  // bracket at the start of the iteration
  double x = 0.0, h = 0.0;
  int degree = 0;
  std::int64_t shots = 0;
  int verdict = 0;
  std::int64_t queries = 0;  // applications of U consumed by the iteration
};

struct EnergyEstimate {
  double value = 0.0;     // shifted-spectrum units
  double epsilon = 0.0;
  double confidence = 0.0;
  std::vector<BisectionIteration> trace;
  std::int64_t total_queries = 0;
  bool failed = false;
  std::string failure;
};

// Fuzzy bisection over [eta, pi - eta]: per iteration a step polynomial at
// threshold x with transition half-width h = (r - l)/6 feeds the chosen
// binary amplitude estimator with per-iteration budget vartheta / K.
EnergyEstimate fuzzy_bisection_energy(const engine::EigenProblem& problem,
                                      const BisectionConfig& config);

enum class PrepMode { Direct, Amplified };

struct PrepProblem {
  const spectral::SpectralData* spec = nullptr;  // unshifted spectral data
  spectral::SpectralShift shift;
  cvector phi0;
};

struct PrepConfig {
  double mu = 0.0;          // shifted-spectrum units, lambda0 <= mu - band/2
  double band = 0.0;        // transition width Delta' (<= spectral gap)
  double gamma = 0.5;
  double epsilon = 1e-2;    // infidelity target
  double vartheta = 0.1;
  PrepMode mode = PrepMode::Direct;
  double c = 0.999;
  int lp_budget = 600;
  std::uint64_t seed = 0;
  StepCache* cache = nullptr;
};

struct PrepResult {
  cvector state;            // post-selected system state
  double fidelity = 0.0;    // |<psi_0 | state>|
  std::int64_t repetitions = 0;  // circuit shots (direct) or trials (amplified)
  std::int64_t grover_rounds = 0;
  std::int64_t total_queries = 0;
  double success_probability = 0.0;
  int degree = 0;
  // per-run dense check: the polynomial keeps the ground component near c
  // and suppresses everything past the transition band
  bool sandwich_ok = false;
  bool failed = false;
  std::string failure;
};

PrepResult prepare_ground_state(const PrepProblem& problem,
                                const PrepConfig& config);

struct FullPrepConfig {
  double eta = M_PI / 4;
  double gap = 0.0;  // lower bound Delta on the shifted spectral gap
  double gamma = 0.5;
  double epsilon = 1e-2;
  double vartheta = 0.1;
  BaeMethod energy_method = BaeMethod::MonteCarlo;
  PrepMode prep_mode = PrepMode::Direct;
  int lp_budget = 600;
  std::uint64_t seed = 0;
};

struct FullPrepResult {
  EnergyEstimate energy;
  PrepResult prep;
  std::int64_t total_queries = 0;
  bool failed = false;
};

// Estimate the ground-state energy to Delta/4, place the threshold a quarter
// gap above the estimate, then run the preparation stage; the failure budget
// is split evenly between the stages.
FullPrepResult full_prep(const PrepProblem& problem,
                         const FullPrepConfig& config);

}  // namespace qetulab::groundstate
