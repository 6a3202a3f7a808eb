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

#include "qetulab/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qetulab/lp.hpp"

namespace qetulab::cheb {

std::vector<double> cheb_grid(int m) {
  if (m < 2) throw std::invalid_argument("cheb_grid: need M >= 2");
  std::vector<double> x(m);
  for (int j = 0; j < m; ++j) x[j] = -std::cos(j * M_PI / (m - 1));
  x.front() = -1.0;
  x.back() = 1.0;
  return x;
}

double eval_cheb(const std::vector<double>& coeffs, Parity parity, double x) {
  // Clenshaw; for the even series T_{2k}(x) = T_k(2x^2 - 1).
  const double y = parity == Parity::Even ? 2.0 * x * x - 1.0 : x;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const double b0 = coeffs[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs.empty() ? 0.0 : coeffs[0] + y * b1 - b2;
}

ShiftedSignSpec shifted_sign_spec(double mu, double delta, double eta,
                                  double c) {
  if (!(eta <= mu - delta / 2 + 1e-12 && mu - delta / 2 < mu + delta / 2 &&
        mu + delta / 2 <= M_PI - eta + 1e-12))
    throw std::invalid_argument(
        "shifted_sign_spec: need eta <= mu-delta/2 < mu+delta/2 <= pi-eta");
  ShiftedSignSpec s;
  s.sigma_plus = std::cos(0.5 * (mu - 0.5 * delta));
  s.sigma_minus = std::cos(0.5 * (mu + 0.5 * delta));
  s.sigma_min = std::cos(0.5 * (M_PI - eta));
  s.sigma_max = std::cos(0.5 * eta);
  s.c = c;
  return s;
}

ApproxSpec make_shifted_sign_approx(const ShiftedSignSpec& s, int degree,
                                    int grid_size) {
  ApproxSpec spec;
  spec.degree = degree;
  spec.grid_size = grid_size;
  spec.cap = s.c;
  spec.parity = Parity::Even;
  Segment stop, plateau;
  stop.lo = s.sigma_min;
  stop.hi = s.sigma_minus;
  stop.target = 0.0;
  plateau.lo = s.sigma_plus;
  plateau.hi = s.sigma_max;
  plateau.target = s.c;
  spec.segments = {stop, plateau};
  return spec;
}

ChebApproxResult solve_minmax(const ApproxSpec& spec) {
  if (spec.segments.empty())
    throw std::invalid_argument("solve_minmax: no target segments");
  if (!(spec.cap > 0.0 && spec.cap < 1.0))
    throw std::invalid_argument("solve_minmax: cap must be in (0,1)");
  if (spec.parity == Parity::Even && spec.degree % 2 != 0)
    throw std::invalid_argument("solve_minmax: even parity needs even degree");

  const int ncoef =
      spec.parity == Parity::Even ? spec.degree / 2 + 1 : spec.degree + 1;
  const int m = std::max(spec.grid_size, 2 * ncoef + 2);
  std::vector<double> grid = cheb_grid(m);

  // Even parity: keep the non-negative half of the grid, mirrored
  // constraints are identical.
  std::vector<double> pts;
  for (double x : grid)
    if (spec.parity == Parity::Full || x >= 0.0) pts.push_back(x);
  // Segment endpoints always constrain, so that segments narrower than the
  // grid spacing (down to a single point) stay well posed.
  for (const auto& s : spec.segments) {
    pts.push_back(s.lo);
    pts.push_back(s.hi);
  }

  auto in_segment = [&](double x, const Segment& s) {
    const double t = spec.parity == Parity::Even ? std::abs(x) : x;
    return t >= s.lo - 1e-15 && t <= s.hi + 1e-15;
  };

  // rows: per segment point |F - target| <= t; per grid point |F| <= cap
  std::size_t seg_rows = 0;
  for (double x : pts)
    for (const auto& s : spec.segments)
      if (in_segment(x, s)) ++seg_rows;

  const std::size_t nvar = static_cast<std::size_t>(ncoef) + 1;
  const std::size_t nrows = 2 * seg_rows + 2 * pts.size();
  lp::RMatrix a(nrows, nvar);
  std::vector<double> b(nrows, 0.0);

  std::vector<double> basis(ncoef);
  auto fill_basis = [&](double x) {
    const double theta = std::acos(std::clamp(x, -1.0, 1.0));
    for (int k = 0; k < ncoef; ++k)
      basis[k] = spec.parity == Parity::Even ? std::cos(2.0 * k * theta)
                                             : std::cos(k * theta);
  };

  std::size_t row = 0;
  for (double x : pts) {
    fill_basis(x);
    for (const auto& s : spec.segments) {
      if (!in_segment(x, s)) continue;
      const double tgt = s.target_at(spec.parity == Parity::Even ? std::abs(x) : x);
      for (int k = 0; k < ncoef; ++k) {
        a(row, k) = basis[k];
        a(row + 1, k) = -basis[k];
      }
      a(row, nvar - 1) = -1.0;
      a(row + 1, nvar - 1) = -1.0;
      b[row] = tgt;
      b[row + 1] = -tgt;
      row += 2;
    }
    for (int k = 0; k < ncoef; ++k) {
      a(row, k) = basis[k];
      a(row + 1, k) = -basis[k];
    }
    b[row] = spec.cap;
    b[row + 1] = spec.cap;
    row += 2;
  }

  std::vector<double> cobj(nvar, 0.0);
  cobj[nvar - 1] = 1.0;
  lp::Solution sol = lp::solve_inequality_form(a, b, cobj);

  ChebApproxResult res;
  res.degree = spec.degree;
  res.parity = spec.parity;
  res.coeffs.assign(sol.x.begin(), sol.x.end() - 1);
  res.eps_star = sol.objective;
  res.lp_gap = sol.gap;
  res.grid = std::move(grid);

  // certificate: recompute the achieved error and the cap on the grid
  double worst = 0.0, cap_worst = 0.0;
  for (double x : pts) {
    const double f = eval_cheb(res.coeffs, res.parity, x);
    cap_worst = std::max(cap_worst, std::abs(f));
    for (const auto& s : spec.segments)
      if (in_segment(x, s))
        worst = std::max(
            worst, std::abs(f - s.target_at(spec.parity == Parity::Even
                                                ? std::abs(x)
                                                : x)));
  }
  if (std::abs(worst - res.eps_star) > 1e-8 + 1e-8 * std::abs(worst))
    throw lp::SolverError("solve_minmax: optimum certificate mismatch");
  if (cap_worst > spec.cap + 1e-8)
    throw lp::SolverError("solve_minmax: cap violated at optimum");
  res.eps_star = worst;
  return res;
}

DegreeSearchResult degree_search(
    const std::function<ApproxSpec(int)>& spec_for_degree, double err_goal,
    int degree_cap, int hint) {
  if (!(err_goal > 0.0)) throw std::invalid_argument("degree_search: err_goal > 0");

  auto probe = [&](int d) { return solve_minmax(spec_for_degree(d)); };

  int lo = -1;  // highest known-failing degree
  int hi = -1;  // lowest known-passing degree
  ChebApproxResult hi_result;

  int d = hint > 0 ? (hint + 1) / 2 * 2 : 0;
  if (d > degree_cap) d = degree_cap / 2 * 2;
  while (true) {
    ChebApproxResult r = probe(d);
    if (r.eps_star <= err_goal) {
      hi = d;
      hi_result = std::move(r);
      break;
    }
    lo = d;
    if (d >= degree_cap)
      throw std::runtime_error("degree_search: degree cap exceeded");
    d = std::min(degree_cap, d == 0 ? 2 : 2 * d);
  }
  // walk down if the hint overshot
  while (hi > 0 && lo < 0) {
    const int probe_d = hi / 4 * 2;
    ChebApproxResult r = probe(probe_d);
    if (r.eps_star <= err_goal) {
      hi = probe_d;
      hi_result = std::move(r);
      if (hi == 0) break;
    } else {
      lo = probe_d;
    }
  }
  while (hi - lo > 2) {
    const int mid = (lo + hi) / 2 / 2 * 2;
    ChebApproxResult r = probe(mid);
    if (r.eps_star <= err_goal) {
      hi = mid;
      hi_result = std::move(r);
    } else {
      lo = mid;
    }
  }
  return {hi, std::move(hi_result)};
}

StepPoly erf_step_poly(double theta0, double halfwidth, double c,
                       double eps_req) {
  if (!(theta0 > 0.0 && theta0 < M_PI / 2))
    throw std::invalid_argument("erf_step_poly: theta0 in (0, pi/2)");
  if (!(halfwidth > 0.0 && halfwidth < theta0))
    throw std::invalid_argument("erf_step_poly: bad halfwidth");

  // Mollifier width from the saturation budget, truncation from the cap
  // margin. erfc-inverse via bisection (only needed once per build).
  auto erfc_inv = [](double y) {
    double lo = 0.0, hi = 30.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (std::erfc(mid) > y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  const double sat = std::min(eps_req / (2.0 * c), 0.49);
  double z = std::sqrt(2.0) * erfc_inv(2.0 * sat);
  const double trunc_tol = std::min(eps_req / 2.0, (1.0 - c) * 0.5);

  for (int attempt = 0; attempt < 8; ++attempt) {
    const double s = halfwidth / z;
    // tail bound sum_{k>K} (2c/pi) e^{-2k^2 s^2}/k <= trunc_tol
    double ks = std::sqrt(std::max(1.0, std::log(4.0 * c / (M_PI * trunc_tol))) / 2.0) / s;
    int kmax = static_cast<int>(std::ceil(ks));
    auto tail_bound = [&](int k) {
      const double q = 2.0 * k * k * s * s;
      return (2.0 * c / M_PI) * std::exp(-q) / (4.0 * k * k * s * s + 1e-30);
    };
    while (tail_bound(kmax) > trunc_tol) kmax = kmax * 11 / 10 + 1;

    StepPoly sp;
    sp.degree = 2 * kmax;
    sp.coeffs.resize(kmax + 1);
    sp.coeffs[0] = 2.0 * c * theta0 / M_PI;
    for (int k = 1; k <= kmax; ++k)
      sp.coeffs[k] = (2.0 * c / M_PI) * std::sin(2.0 * k * theta0) *
                     std::exp(-2.0 * k * k * s * s) / k;

    // measure errors by sampling in theta
    const int nsamp = 700;
    double perr = 0.0, serr = 0.0, mabs = 0.0;
    auto eval_theta = [&](double th) {
      return eval_cheb(sp.coeffs, Parity::Even, std::cos(th));
    };
    const double stop_lo = theta0 + halfwidth;
    const double stop_hi = M_PI - theta0 - halfwidth;
    for (int i = 0; i <= nsamp; ++i) {
      const double u = static_cast<double>(i) / nsamp;
      const double tp = u * (theta0 - halfwidth);
      perr = std::max(perr, std::abs(eval_theta(tp) - c));
      if (stop_hi > stop_lo) {
        const double ts = stop_lo + u * (stop_hi - stop_lo);
        serr = std::max(serr, std::abs(eval_theta(ts)));
      }
      const double ta = u * M_PI;
      mabs = std::max(mabs, std::abs(eval_theta(ta)));
    }
    sp.plateau_err = perr;
    sp.stop_err = serr;
    sp.max_abs = mabs;
    if (perr <= eps_req && serr <= eps_req && mabs <= 1.0 - 1e-9) return sp;
    z *= 1.15;  // sharpen the mollifier and retry
  }
  throw std::runtime_error("erf_step_poly: failed to meet the error budget");
}

StepBuild build_step_polynomial(double theta0, double halfwidth, double c,
                                double eps_req, int lp_budget, int degree_cap) {
  // empirical min-max degree law for this family: eps* ~ exp(-(pi/2) d w)
  const int predicted = static_cast<int>(
      std::ceil((std::log(1.0 / eps_req) + 1.0) / (M_PI / 2.0 * halfwidth)));

  StepBuild out;
  if (predicted <= lp_budget) {
    ShiftedSignSpec ss;
    ss.sigma_plus = std::cos(theta0 - halfwidth);
    ss.sigma_minus = std::cos(theta0 + halfwidth);
    ss.sigma_min = 0.0;
    ss.sigma_max = 1.0;
    ss.c = c;
    auto spec_for = [&](int d) {
      return make_shifted_sign_approx(ss, d, std::max(400, 2 * d + 8));
    };
    try {
      DegreeSearchResult r =
          degree_search(spec_for, eps_req, std::max(lp_budget * 2, 64),
                        predicted);
      out.coeffs = std::move(r.result.coeffs);
      out.degree = r.degree;
      out.err = r.result.eps_star;
      out.used_lp = true;
      return out;
    } catch (const std::runtime_error&) {
      // fall through to the analytic tier
    }
  }
  StepPoly sp = erf_step_poly(theta0, halfwidth, c, eps_req);
  if (sp.degree > degree_cap)
    throw std::runtime_error("build_step_polynomial: degree cap exceeded");
  out.coeffs = std::move(sp.coeffs);
  out.degree = sp.degree;
  out.err = std::max(sp.plateau_err, sp.stop_err);
  out.used_lp = false;
  return out;
}

}  // namespace qetulab::cheb
