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

#include <cstdint>

#include "qetulab/engine.hpp"

namespace qetulab::qpe {

// Exact m-bit phase-estimation outcome distribution for a spectral mixture:
// P(k) = sum_j w_j |(1/2^m) sum_t e^{i t (lambda_j - 2 pi k / 2^m)}|^2.
std::vector<double> qpe_distribution(const std::vector<double>& weights,
                                     const std::vector<double>& lambdas,
                                     int m);

// One semi-classical QPE sample: eigenvalue index drawn from the weights,
// outcome drawn from the squared-Dirichlet kernel around it (O(1) amortized
// rejection sampling). Returns the outcome index in [0, 2^m).
std::uint64_t sample_qpe_outcome(double lambda, int m, Rng& rng);

struct QpeConfig {
  double gamma = 0.5;
  double epsilon = 1e-3;
  // depth rule: T = 2^m >= max(grid_factor * 2 pi / eps,
  //                            leak_factor (1 - gamma^2) / (gamma^2 eps));
  // the leakage term guards the quantile against worst-case kernel tails
  // when the gap is unknown a priori
  double grid_factor = 4.0;
  double leak_factor = 32.0;
  double quantile = 0.0;  // 0 picks gamma^2 / 2
  std::int64_t base_repetitions = 0;  // 0 picks ceil(96 / gamma^2)
  int max_doublings = 3;  // bootstrap-driven sample-size escalation
  std::uint64_t seed = 0;
};

struct QpeEstimate {
  double value = 0.0;
  std::int64_t queries = 0;  // controlled-U applications, (2^m - 1) per sample
  std::int64_t samples = 0;
  int m = 0;
  double bootstrap_width = 0.0;
};

// Ground-energy estimate from the sampled outcome distribution: the
// q-quantile of the sampled eigenphases, with repetitions escalated until a
// bootstrap confidence interval of the quantile is narrower than epsilon.
QpeEstimate qpe_estimate_ground(const engine::EigenProblem& problem,
                                const QpeConfig& config);

}  // namespace qetulab::qpe
