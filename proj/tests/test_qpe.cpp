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

#include <cmath>

#include "qetulab/qpe.hpp"

using namespace qetulab;
using namespace qetulab::qpe;

TEST_CASE("qpe distribution: normalization, on-grid concentration, peak bound") {
  const int m = 6;
  const double td = 64.0;

  // exactly on the grid
  auto p_on = qpe_distribution({1.0}, {2.0 * M_PI * 5.0 / td}, m);
  double total = 0.0;
  for (double v : p_on) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p_on[5] == doctest::Approx(1.0).epsilon(1e-12));

  // worst off-grid case: half-integer phase, peak >= 4/pi^2
  auto p_off = qpe_distribution({1.0}, {2.0 * M_PI * 5.5 / td}, m);
  total = 0.0;
  double peak = 0.0;
  for (double v : p_off) {
    total += v;
    peak = std::max(peak, v);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(peak >= 4.0 / (M_PI * M_PI) - 1e-12);

  // mixture linearity
  auto p_mix = qpe_distribution({0.25, 0.75},
                                {2.0 * M_PI * 5.0 / td, 2.0 * M_PI * 11.5 / td}, m);
  auto p_b = qpe_distribution({1.0}, {2.0 * M_PI * 11.5 / td}, m);
  for (std::size_t k = 0; k < p_mix.size(); ++k)
    CHECK(p_mix[k] ==
          doctest::Approx(0.25 * p_on[k] + 0.75 * p_b[k]).epsilon(1e-10));
}

TEST_CASE("shift covariance: a one-cell shift permutes the outcomes") {
  const int m = 5;
  const double step = 2.0 * M_PI / 32.0;
  auto p0 = qpe_distribution({0.6, 0.4}, {0.7, 1.9}, m);
  auto p1 = qpe_distribution({0.6, 0.4}, {0.7 + step, 1.9 + step}, m);
  for (std::size_t k = 0; k < p0.size(); ++k)
    CHECK(p1[(k + 1) % p0.size()] == doctest::Approx(p0[k]).epsilon(1e-10));
}

TEST_CASE("kernel sampler matches the exact distribution") {
  const int m = 6;
  const double lambda = 1.2345;
  auto exact = qpe_distribution({1.0}, {lambda}, m);
  Rng rng(7);
  std::vector<double> freq(exact.size(), 0.0);
  const int samples = 200000;
  for (int s = 0; s < samples; ++s) freq[sample_qpe_outcome(lambda, m, rng)] += 1.0;
  double tv = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k)
    tv += std::abs(freq[k] / samples - exact[k]);
  CHECK(tv / 2.0 <= 0.01);
}

TEST_CASE("qpe ground estimate: eigenstate input") {
  engine::EigenProblem p;
  p.lambda = {1.234, 2.0};
  p.weight = {1.0, 0.0};
  QpeConfig cfg;
  cfg.gamma = 1.0;
  cfg.epsilon = 1e-3;
  cfg.seed = 3;
  auto est = qpe_estimate_ground(p, cfg);
  CHECK(std::abs(est.value - 1.234) <= cfg.epsilon);
  CHECK(est.queries == est.samples * ((std::int64_t{1} << est.m) - 1));
}

TEST_CASE("qpe ground estimate: random spectrum at moderate overlap") {
  auto rs = spectral::build_random_spectrum(48, 0.25 * M_PI, 0.75 * M_PI, 31);
  spectral::SpectralShift noshift;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    cvector phi0 = engine::planted_overlap_state(rs.spec, 0.4, 600 + seed);
    auto prob = engine::shifted_problem(rs.spec, noshift, phi0);
    QpeConfig cfg;
    cfg.gamma = 0.4;
    cfg.epsilon = 2e-3;
    cfg.seed = seed;
    auto est = qpe_estimate_ground(prob, cfg);
    CHECK(std::abs(est.value - rs.spec.lambda0) <= cfg.epsilon);
  }
}
