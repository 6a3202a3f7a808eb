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

#include "qetulab/cheb.hpp"
#include "qetulab/linalg.hpp"

namespace qetulab::bae {

// Binary amplitude estimation: decide whether the flagged amplitude A is
// <= gamma1 (verdict 0) or >= gamma2 (verdict 1), promised one of the two.

// Shot count from the Chernoff-Hoeffding bound with the exact Bernoulli KL
// divergence; one-sided when gamma1 = 0.
std::int64_t mc_sample_size(double gamma1, double gamma2, double vartheta);

struct McOutcome {
  int verdict = 0;
  std::int64_t shots = 0;
};

// Monte-Carlo path: samples the flag bit (Bernoulli with mean 1 - A^2) and
// compares the average against p_1/2 = 1 - (gamma1^2 + gamma2^2)/2.
McOutcome monte_carlo_bae(double amplitude, double gamma1, double gamma2,
                          double vartheta, Rng& rng);

// Even threshold polynomial for the walk path: P >= 1 - delta on
// [gamma2, 1], |P| <= delta on [0, gamma1].
struct WalkPoly {
  std::vector<double> coeffs;
  int degree = 0;
};
WalkPoly walk_bae_polynomial(double gamma1, double gamma2, double delta = 0.25,
                             int lp_budget = 600);

// Majority-vote repetitions distinguishing outcome rates (1-delta)^2 vs
// delta^2 (Hoeffding on the 1/4 gap at delta = 1/4).
int walk_repetitions(double vartheta);

struct WalkOutcome {
  int verdict = 0;
  int reps = 0;
  std::int64_t w_queries = 0;  // applications of W, (2 deg + 1) per rep
  int degree = 0;
};

// Walk-operator path: each repetition prepares W|0..0>, runs the QET-U of
// the walk operator, and measures the outer ancilla; the hit probability is
// |P(A)|^2. Majority vote against the midpoint threshold.
WalkOutcome qetu_bae(double amplitude, double gamma1, double gamma2,
                     double vartheta, Rng& rng,
                     const WalkPoly* poly = nullptr);

}  // namespace qetulab::bae
