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

#include "qetulab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qetulab::groundstate {

namespace {

int bisection_iterations(double window, double epsilon) {
  return static_cast<int>(
      std::ceil(std::log(window / epsilon) / std::log(1.5) - 1e-12));
}

std::tuple<std::int64_t, std::int64_t, std::int64_t> quantize(double theta0,
                                                              double halfwidth,
                                                              double eps) {
  return {static_cast<std::int64_t>(std::llround(theta0 * 1e12)),
          static_cast<std::int64_t>(std::llround(halfwidth * 1e12)),
          static_cast<std::int64_t>(std::llround(eps * 1e12))};
}

}  // namespace

const cheb::StepBuild& StepCache::get(double theta0, double halfwidth,
                                      double c, double eps, int lp_budget) {
  const auto key = quantize(theta0, halfwidth, eps);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  cheb::StepBuild built =
      cheb::build_step_polynomial(theta0, halfwidth, c, eps, lp_budget);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(key, std::move(built)).first->second;
}

EnergyEstimate fuzzy_bisection_energy(const engine::EigenProblem& problem,
                                      const BisectionConfig& config) {
  EnergyEstimate est;
  est.epsilon = config.epsilon;
  est.confidence = 1.0 - config.vartheta;

  double l = config.eta;
  double r = M_PI - config.eta;
  const int iters = bisection_iterations(r - l, config.epsilon);
  const double vartheta_per = config.vartheta / iters;

  // Decision thresholds: the working-precision values gamma1 = eps' and
  // gamma2 = (c - eps') gamma with eps' = gamma c / (2 (gamma + 1)). The
  // step polynomial only needs error <= gamma1; its budget is capped at a
  // gamma-independent working accuracy (default 0.08, overridable) so the
  // per-iteration degrees do not pick up a log(1/gamma) factor.
  const double theory_eps =
      config.gamma * config.c / (2.0 * (config.gamma + 1.0));
  const double gamma1 = theory_eps;
  const double gamma2 = (config.c - theory_eps) * config.gamma;
  const double budget = config.approx_budget > 0.0 ? config.approx_budget : 0.08;
  const double eps_poly = std::min(theory_eps, budget);

  bae::WalkPoly walk_poly;
  if (config.method == BaeMethod::QetuWalk)
    walk_poly = bae::walk_bae_polynomial(gamma1, gamma2, 0.25, config.lp_budget);

  Rng rng(config.seed);
  StepCache local_cache;
  StepCache& cache = config.cache ? *config.cache : local_cache;

  for (int k = 0; k < iters; ++k) {
    const double x = 0.5 * (l + r);
    const double h = (r - l) / 6.0;

    const cheb::StepBuild& step =
        cache.get(0.5 * x, 0.5 * h, config.c, eps_poly, config.lp_budget);
    const double amplitude = problem.amplitude(step.coeffs);

    auto run_bae = [&](double vt, std::int64_t* shots) {
      if (config.method == BaeMethod::MonteCarlo) {
        auto mc = bae::monte_carlo_bae(amplitude, gamma1, gamma2, vt, rng);
        *shots = mc.shots;
        return std::make_pair(mc.verdict,
                              mc.shots * static_cast<std::int64_t>(step.degree));
      }
      auto wk = bae::qetu_bae(amplitude, gamma1, gamma2, vt, rng, &walk_poly);
      *shots = wk.reps;
      return std::make_pair(wk.verdict,
                            wk.w_queries * static_cast<std::int64_t>(step.degree));
    };

    std::int64_t shots = 0;
    auto [verdict, queries] = run_bae(vartheta_per, &shots);
    double nl = l, nr = r;
    if (verdict == 1) {
      nr = x + h;  // large amplitude: ground energy below the band
    } else {
      nl = x - h;
    }

    if (config.validate_lambda0 &&
        (*config.validate_lambda0 < nl - 1e-12 ||
         *config.validate_lambda0 > nr + 1e-12)) {
      // contradiction: retry once with doubled shots, then give up
      std::int64_t shots2 = 0;
      auto [verdict2, queries2] = run_bae(vartheta_per * vartheta_per, &shots2);
      queries += queries2;
      shots += shots2;
      verdict = verdict2;
      nl = l;
      nr = r;
      if (verdict == 1)
        nr = x + h;
      else
        nl = x - h;
      if (*config.validate_lambda0 < nl - 1e-12 ||
          *config.validate_lambda0 > nr + 1e-12) {
        est.trace.push_back({l, r, x, h, step.degree, shots, verdict, queries});
        est.total_queries += queries;
        est.failed = true;
        est.failure = "bracket lost the reference energy";
        est.value = 0.5 * (nl + nr);
        return est;
      }
    }

    est.trace.push_back({l, r, x, h, step.degree, shots, verdict, queries});
    est.total_queries += queries;
    l = nl;
    r = nr;
  }
  est.value = 0.5 * (l + r);
  return est;
}

PrepResult prepare_ground_state(const PrepProblem& problem,
                                const PrepConfig& config) {
  PrepResult out;
  const auto& spec = *problem.spec;
  const std::size_t dim = spec.eigenvalues.size();

  // polynomial accuracy so the orthogonal leakage keeps infidelity <= eps
  const double eps_poly = std::min(
      1e-3, 0.9 * config.c * config.gamma * std::sqrt(2.0 * config.epsilon));
  StepCache local_cache;
  StepCache& cache = config.cache ? *config.cache : local_cache;
  const cheb::StepBuild& step =
      cache.get(0.5 * config.mu, 0.25 * config.band, config.c, eps_poly,
                config.lp_budget);
  out.degree = step.degree;

  // eigenbasis pass: output state and success amplitude
  engine::EigenProblem ep;
  ep.lambda.resize(dim);
  ep.weight.resize(dim);
  cvector overlaps(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    ep.lambda[j] = problem.shift.apply(spec.eigenvalues[j]);
    cplx ip = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      ip += std::conj(spec.eigenvectors(i, j)) * problem.phi0[i];
    overlaps[j] = ip;
    ep.weight[j] = std::norm(ip);
  }
  const double amplitude = ep.amplitude(step.coeffs);
  out.success_probability = amplitude * amplitude;
  if (out.success_probability < 1e-18) {
    out.failed = true;
    out.failure = "degenerate post-selection";
    return out;
  }

  // dense projector-sandwich check: ground component within the plateau,
  // everything past the band suppressed to the polynomial budget
  {
    const double f0 = cheb::eval_cheb(step.coeffs, cheb::Parity::Even,
                                      std::cos(0.5 * ep.lambda.front()));
    bool ok = ep.lambda.front() <= config.mu - 0.5 * config.band + 1e-9 &&
              f0 >= (config.c - 2.0 * eps_poly);
    for (std::size_t j = 1; j < ep.lambda.size() && ok; ++j) {
      if (ep.lambda[j] < config.mu + 0.5 * config.band - 1e-12) continue;
      const double fj = cheb::eval_cheb(step.coeffs, cheb::Parity::Even,
                                        std::cos(0.5 * ep.lambda[j]));
      ok = std::abs(fj) <= 2.0 * eps_poly;
    }
    out.sandwich_ok = ok;
  }

  // post-selected state sum_j F_j <v_j|phi_0> |v_j>
  out.state.assign(dim, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < dim; ++j) {
    const double f = cheb::eval_cheb(step.coeffs, cheb::Parity::Even,
                                     std::cos(0.5 * ep.lambda[j]));
    const cplx coef = overlaps[j] * f / amplitude;
    if (std::abs(coef) == 0.0) continue;
    for (std::size_t i = 0; i < dim; ++i)
      out.state[i] += coef * spec.eigenvectors(i, j);
  }
  cplx fid = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    fid += std::conj(spec.eigenvectors(i, 0)) * out.state[i];
  out.fidelity = std::abs(fid);

  Rng rng(config.seed);
  if (config.mode == PrepMode::Direct) {
    const double p_bound =
        std::pow((config.c - eps_poly) * config.gamma, 2.0);
    const std::int64_t budget = static_cast<std::int64_t>(
        std::ceil(std::log(1.0 / config.vartheta) /
                  -std::log1p(-std::min(0.999999, p_bound))));
    std::int64_t attempts = 1;
    while (!rng.bernoulli(out.success_probability)) {
      ++attempts;
      if (attempts > std::max<std::int64_t>(budget, 4)) {
        out.failed = true;
        out.failure = "post-selection budget exhausted";
        out.repetitions = attempts - 1;
        out.total_queries = (attempts - 1) * step.degree;
        return out;
      }
    }
    out.repetitions = attempts;
    out.total_queries = attempts * static_cast<std::int64_t>(step.degree);
  } else {
    // amplitude amplification with the exponential round schedule
    const double theta = std::asin(std::min(1.0, amplitude));
    const double a_bound = (config.c - eps_poly) * config.gamma;
    const std::int64_t m_max = static_cast<std::int64_t>(
        std::ceil(M_PI / (4.0 * std::asin(std::min(1.0, a_bound))))) + 1;
    std::int64_t m = 1;
    std::int64_t trials = 0;
    const std::int64_t trial_budget =
        64 + 4 * static_cast<std::int64_t>(
                     std::ceil(std::log2(static_cast<double>(m_max) + 1.0)));
    bool success = false;
    bool doubling = true;
    while (trials < trial_budget) {
      ++trials;
      const double p = std::pow(std::sin((2.0 * m + 1.0) * theta), 2.0);
      out.grover_rounds += m;
      out.total_queries += (2 * m + 1) * static_cast<std::int64_t>(step.degree);
      if (rng.bernoulli(p)) {
        success = true;
        break;
      }
      if (doubling && m >= m_max) doubling = false;
      if (doubling) {
        m = std::min(2 * m, m_max);
      } else {
        // randomized round count once the doubling pass tops out, so an
        // unlucky rotation angle cannot pin the success probability at zero
        m = 1 + static_cast<std::int64_t>(rng.integer(
                    static_cast<std::uint64_t>(m_max)));
      }
    }
    out.repetitions = trials;
    if (!success) {
      out.failed = true;
      out.failure = "amplification budget exhausted";
    }
  }
  return out;
}

FullPrepResult full_prep(const PrepProblem& problem,
                         const FullPrepConfig& config) {
  FullPrepResult out;

  engine::EigenProblem ep;
  {
    const auto& spec = *problem.spec;
    const std::size_t dim = spec.eigenvalues.size();
    ep.lambda.resize(dim);
    ep.weight.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      ep.lambda[j] = problem.shift.apply(spec.eigenvalues[j]);
      cplx ip = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        ip += std::conj(spec.eigenvectors(i, j)) * problem.phi0[i];
      ep.weight[j] = std::norm(ip);
    }
  }

  BisectionConfig bc;
  bc.eta = config.eta;
  bc.gamma = config.gamma;
  bc.epsilon = config.gap / 4.0;
  bc.vartheta = config.vartheta / 2.0;
  bc.method = config.energy_method;
  bc.lp_budget = config.lp_budget;
  bc.seed = config.seed;
  out.energy = fuzzy_bisection_energy(ep, bc);
  out.total_queries += out.energy.total_queries;
  if (out.energy.failed) {
    out.failed = true;
    return out;
  }

  PrepConfig pc;
  pc.mu = out.energy.value + config.gap / 4.0;
  pc.band = config.gap / 4.0;
  pc.gamma = config.gamma;
  pc.epsilon = config.epsilon;
  pc.vartheta = config.vartheta / 2.0;
  pc.mode = config.prep_mode;
  pc.lp_budget = config.lp_budget;
  pc.seed = config.seed + 0x9e3779b97f4a7c15ull;
  out.prep = prepare_ground_state(problem, pc);
  out.total_queries += out.prep.total_queries;
  out.failed = out.prep.failed;
  return out;
}

}  // namespace qetulab::groundstate
