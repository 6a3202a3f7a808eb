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

#include "qetulab/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qetulab::qpe {

namespace {

// squared Dirichlet kernel in offset units: K(u) = sin^2(pi u) /
// (T^2 sin^2(pi u / T)), the probability of outcome k with u = phi - k
double kernel(double u, double t_size) {
  const double num = std::sin(M_PI * u);
  const double den = t_size * std::sin(M_PI * u / t_size);
  if (std::abs(den) < 1e-300) return 1.0;
  const double r = num / den;
  return r * r;
}

}  // namespace

std::vector<double> qpe_distribution(const std::vector<double>& weights,
                                     const std::vector<double>& lambdas,
                                     int m) {
  if (weights.size() != lambdas.size())
    throw std::invalid_argument("qpe_distribution: size mismatch");
  if (m < 1 || m > 24)
    throw std::invalid_argument("qpe_distribution: m out of range for dense output");
  const std::size_t t = std::size_t{1} << m;
  const double td = static_cast<double>(t);
  std::vector<double> p(t, 0.0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0.0) continue;
    const double phi = lambdas[j] * td / (2.0 * M_PI);
    for (std::size_t k = 0; k < t; ++k) {
      double u = phi - static_cast<double>(k);
      u -= td * std::round(u / td);  // circular representative
      p[k] += weights[j] * kernel(u, td);
    }
  }
  return p;
}

std::uint64_t sample_qpe_outcome(double lambda, int m, Rng& rng) {
  const double td = std::pow(2.0, m);
  const std::uint64_t t = std::uint64_t{1} << m;
  double phi = lambda * td / (2.0 * M_PI);
  phi -= td * std::floor(phi / td);
  const std::int64_t k0 = static_cast<std::int64_t>(std::llround(phi));

  // proposal: three unit cells around the peak (weight 3) and two power-law
  // tails of weight 1/4 each (mass 1/(4 j (j-1)) at offset j >= 2, which
  // dominates the kernel bound sin^2(pi u)/(4 u^2))
  const double w_center = 3.0, w_tail = 0.25;
  const double w_total = w_center + 2.0 * w_tail;
  for (int guard = 0; guard < 100000; ++guard) {
    double pick = rng.uniform() * w_total;
    std::int64_t j;
    double gj;
    if (pick < w_center) {
      j = static_cast<std::int64_t>(rng.integer(3)) - 1;
      gj = 1.0;
    } else {
      const double u = rng.uniform();
      const double x = 0.5 + 1.0 / (1.0 - u);  // inverse CDF of the tail
      j = static_cast<std::int64_t>(std::floor(x + 0.5));
      if (j < 2 || j > static_cast<std::int64_t>(t / 2)) continue;
      gj = 1.0 / (4.0 * static_cast<double>(j) * static_cast<double>(j - 1));
      if (pick >= w_center + w_tail) j = -j;
    }
    std::int64_t k = (k0 + j) % static_cast<std::int64_t>(t);
    if (k < 0) k += static_cast<std::int64_t>(t);
    double u = phi - static_cast<double>(k);
    u -= td * std::round(u / td);
    const double accept = kernel(u, td) / gj;
    if (rng.uniform() < accept) return static_cast<std::uint64_t>(k);
  }
  throw std::runtime_error("sample_qpe_outcome: rejection sampler stalled");
}

QpeEstimate qpe_estimate_ground(const engine::EigenProblem& problem,
                                const QpeConfig& config) {
  const double gamma = config.gamma;
  const double eps = config.epsilon;
  if (!(gamma > 0.0 && gamma <= 1.0) || !(eps > 0.0))
    throw std::invalid_argument("qpe_estimate_ground: bad gamma/epsilon");

  const double t_needed =
      std::max(config.grid_factor * 2.0 * M_PI / eps,
               config.leak_factor * (1.0 - gamma * gamma) /
                   (gamma * gamma * eps));
  int m = 1;
  while (std::pow(2.0, m) < t_needed) ++m;
  const double td = std::pow(2.0, m);

  const double q =
      config.quantile > 0.0 ? config.quantile : 0.5 * gamma * gamma;
  std::int64_t n = config.base_repetitions > 0
                       ? config.base_repetitions
                       : static_cast<std::int64_t>(
                             std::ceil(96.0 / (gamma * gamma)));

  Rng rng(config.seed);
  // alias-free weight sampling through the CDF
  std::vector<double> cdf(problem.weight.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < problem.weight.size(); ++j) {
    acc += problem.weight[j];
    cdf[j] = acc;
  }

  auto draw_sample = [&]() {
    const double u = rng.uniform() * acc;
    const std::size_t j = std::min<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin(),
        cdf.size() - 1);
    const std::uint64_t k = sample_qpe_outcome(problem.lambda[j], m, rng);
    return 2.0 * M_PI * static_cast<double>(k) / td;
  };

  std::vector<double> samples;
  samples.reserve(n);
  QpeEstimate out;
  out.m = m;

  auto quantile_of = [&](std::vector<double>& v) {
    const std::size_t idx = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(q * v.size()))) - 1;
    std::nth_element(v.begin(), v.begin() + idx, v.end());
    return v[idx];
  };

  for (int round = 0; round <= config.max_doublings; ++round) {
    while (static_cast<std::int64_t>(samples.size()) < n)
      samples.push_back(draw_sample());

    std::vector<double> work = samples;
    out.value = quantile_of(work);

    // bootstrap confidence interval of the quantile
    const int b = 40;
    std::vector<double> boots(b);
    std::vector<double> re(samples.size());
    for (int i = 0; i < b; ++i) {
      for (auto& x : re) x = samples[rng.integer(samples.size())];
      boots[i] = quantile_of(re);
    }
    std::sort(boots.begin(), boots.end());
    out.bootstrap_width = boots[static_cast<int>(0.95 * (b - 1))] -
                          boots[static_cast<int>(0.05 * (b - 1))];
    if (out.bootstrap_width <= eps || round == config.max_doublings) break;
    n *= 2;
  }

  out.samples = static_cast<std::int64_t>(samples.size());
  out.queries = out.samples * (static_cast<std::int64_t>(td) - 1);
  return out;
}

}  // namespace qetulab::qpe
