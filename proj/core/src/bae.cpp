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

#include "qetulab/bae.hpp"

#include <cmath>
#include <stdexcept>

namespace qetulab::bae {

namespace {

// KL divergence between Bernoulli(x) and Bernoulli(y)
double bernoulli_kl(double x, double y) {
  double d = 0.0;
  if (x > 0.0) d += x * std::log(x / y);
  if (x < 1.0) d += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  return d;
}

}  // namespace

std::int64_t mc_sample_size(double gamma1, double gamma2, double vartheta) {
  if (!(gamma1 >= 0.0 && gamma2 > gamma1 && gamma2 <= 1.0))
    throw std::invalid_argument("mc_sample_size: need 0 <= gamma1 < gamma2 <= 1");
  if (!(vartheta > 0.0 && vartheta < 1.0))
    throw std::invalid_argument("mc_sample_size: vartheta in (0,1)");
  const double p1 = 1.0 - gamma1 * gamma1;
  const double p2 = 1.0 - gamma2 * gamma2;
  const double ph = 0.5 * (p1 + p2);
  double dmin;
  if (gamma1 == 0.0) {
    dmin = bernoulli_kl(ph, p2);  // one-sided: D(ph || 1) is infinite
  } else {
    dmin = std::min(bernoulli_kl(ph, p1), bernoulli_kl(ph, p2));
  }
  return static_cast<std::int64_t>(std::ceil(std::log(1.0 / vartheta) / dmin));
}

McOutcome monte_carlo_bae(double amplitude, double gamma1, double gamma2,
                          double vartheta, Rng& rng) {
  McOutcome out;
  out.shots = mc_sample_size(gamma1, gamma2, vartheta);
  const double p_one = 1.0 - amplitude * amplitude;
  const double p_half = 1.0 - 0.5 * (gamma1 * gamma1 + gamma2 * gamma2);
  std::int64_t ones = 0;
  for (std::int64_t s = 0; s < out.shots; ++s)
    if (rng.bernoulli(p_one)) ++ones;
  const double mean = static_cast<double>(ones) / out.shots;
  out.verdict = mean > p_half ? 0 : 1;
  return out;
}

WalkPoly walk_bae_polynomial(double gamma1, double gamma2, double delta,
                             int lp_budget) {
  if (!(gamma2 > gamma1))
    throw std::invalid_argument("walk_bae_polynomial: gamma2 > gamma1");
  cheb::ShiftedSignSpec ss;
  ss.sigma_min = 0.0;
  ss.sigma_minus = gamma1;
  ss.sigma_plus = gamma2;
  ss.sigma_max = 1.0;
  ss.c = 1.0 - 0.5 * delta;
  auto spec_for = [&](int d) {
    return cheb::make_shifted_sign_approx(ss, d, std::max(400, 2 * d + 8));
  };
  auto r = cheb::degree_search(spec_for, 0.5 * delta,
                               std::max(64, 4 * lp_budget));
  WalkPoly p;
  p.coeffs = std::move(r.result.coeffs);
  p.degree = r.degree;
  return p;
}

int walk_repetitions(double vartheta) {
  if (!(vartheta > 0.0 && vartheta < 1.0))
    throw std::invalid_argument("walk_repetitions: vartheta in (0,1)");
  return 2 * static_cast<int>(std::ceil(18.0 * std::log(1.0 / vartheta))) + 1;
}

WalkOutcome qetu_bae(double amplitude, double gamma1, double gamma2,
                     double vartheta, Rng& rng, const WalkPoly* poly) {
  WalkPoly local;
  if (!poly) {
    local = walk_bae_polynomial(gamma1, gamma2);
    poly = &local;
  }
  WalkOutcome out;
  out.degree = poly->degree;
  out.reps = walk_repetitions(vartheta);

  const double pa =
      cheb::eval_cheb(poly->coeffs, cheb::Parity::Even, amplitude);
  const double p_hit = pa * pa;
  // distinguish >= (1-delta)^2 = 9/16 from <= delta^2 = 1/16 at delta = 1/4
  const double threshold = 5.0 / 16.0;
  int hits = 0;
  for (int repetition = 0; repetition < out.reps; ++repetition)
    if (rng.bernoulli(p_hit)) ++hits;
  out.verdict =
      (static_cast<double>(hits) / out.reps > threshold) ? 1 : 0;
  out.w_queries =
      static_cast<std::int64_t>(out.reps) * (2 * poly->degree + 1);
  return out;
}

}  // namespace qetulab::bae
