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

#include "qetulab/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qetulab::qsp {

namespace {

// 2x2 complex matrix with a flat layout, enough for the SU(2) chain.
struct M2 {
  cplx a, b, c, d;  // [[a, b], [c, d]]

  static M2 ident() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline M2 mul(const M2& p, const M2& q) {
  return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
          p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

// e^{i phi X} = [[cos phi, i sin phi], [i sin phi, cos phi]]
inline M2 xrot(double phi) {
  const double co = std::cos(phi), si = std::sin(phi);
  return {cplx(co, 0.0), cplx(0.0, si), cplx(0.0, si), cplx(co, 0.0)};
}

// i X * e^{i phi X}, the phi-derivative of xrot
inline M2 xrot_deriv(double phi) {
  const double co = std::cos(phi), si = std::sin(phi);
  return {cplx(-si, 0.0), cplx(0.0, co), cplx(0.0, co), cplx(-si, 0.0)};
}

inline M2 wz(double theta) {
  return {std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta)};
}

inline M2 wz_conj(double theta) { return wz(-theta); }

void check_phis(const std::vector<double>& phis) {
  if (phis.empty()) throw std::invalid_argument("qsp: empty phase sequence");
  const std::size_t d = phis.size() - 1;
  if (d % 2 != 0) throw std::invalid_argument("qsp: degree must be even");
  for (std::size_t j = 0; j < phis.size(); ++j)
    if (std::abs(phis[j] - phis[d - j]) > 1e-12)
      throw std::invalid_argument("qsp: phase sequence must be symmetric");
}

// Factor list of the chain: rotations at even slots, W factors at odd slots.
// Slot 2i holds e^{i phi_i X}; slot 2i-1 holds Wz^* for odd W position, Wz
// for even, counted from the left as in the defining product.
std::vector<M2> chain_factors(double x, const std::vector<double>& phis) {
  const std::size_t d = phis.size() - 1;
  const double theta = std::acos(std::clamp(x, -1.0, 1.0));
  std::vector<M2> f(2 * d + 1);
  for (std::size_t i = 0; i <= d; ++i) f[2 * i] = xrot(phis[i]);
  for (std::size_t w = 1; w <= d; ++w)
    f[2 * w - 1] = (w % 2 == 1) ? wz_conj(theta) : wz(theta);
  return f;
}

}  // namespace

CMatrix su2_product(double x, const std::vector<double>& phis) {
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::domain_error("su2_product: |x| > 1");
  check_phis(phis);
  const auto f = chain_factors(x, phis);
  M2 u = M2::ident();
  for (const auto& m : f) u = mul(u, m);
  CMatrix out(2, 2);
  out(0, 0) = u.a;
  out(0, 1) = u.b;
  out(1, 0) = u.c;
  out(1, 1) = u.d;
  return out;
}

double realized_value(double x, const std::vector<double>& phis) {
  check_phis(phis);
  const auto f = chain_factors(x, phis);
  M2 u = M2::ident();
  for (const auto& m : f) u = mul(u, m);
  return u.a.real();
}

QSPTarget make_qsp_target(const std::vector<double>& even_coeffs, int d) {
  if (d < 0 || d % 2 != 0)
    throw std::invalid_argument("make_qsp_target: even degree required");
  QSPTarget t;
  t.d = d;
  t.coeffs = even_coeffs;
  const int dt = d / 2 + 1;  // ceil((d+1)/2) for even d
  t.nodes.resize(dt);
  t.values.resize(dt);
  for (int k = 1; k <= dt; ++k) {
    t.nodes[k - 1] = std::cos((2.0 * k - 1.0) * M_PI / (4.0 * dt));
    t.values[k - 1] = cheb::eval_cheb(even_coeffs, cheb::Parity::Even,
                                      t.nodes[k - 1]);
  }
  return t;
}

CostGrad qsp_cost(const std::vector<double>& phis, const QSPTarget& target) {
  check_phis(phis);
  const std::size_t d = phis.size() - 1;
  if (static_cast<int>(d) != target.d)
    throw std::invalid_argument("qsp_cost: degree mismatch");
  const std::size_t dt = d / 2 + 1;
  const std::size_t nfac = 2 * d + 1;

  CostGrad out;
  out.grad.assign(dt, 0.0);

  std::vector<M2> prefix(nfac + 1), suffix(nfac + 1);
  for (std::size_t k = 0; k < target.nodes.size(); ++k) {
    const auto f = chain_factors(target.nodes[k], phis);
    prefix[0] = M2::ident();
    for (std::size_t i = 0; i < nfac; ++i) prefix[i + 1] = mul(prefix[i], f[i]);
    suffix[nfac] = M2::ident();
    for (std::size_t i = nfac; i-- > 0;) suffix[i] = mul(f[i], suffix[i + 1]);

    const double g = prefix[nfac].a.real();
    const double r = g - target.values[k];
    out.cost += r * r;

    // d g / d phi at rotation slot 2i, folded onto the free parameters
    for (std::size_t i = 0; i <= d; ++i) {
      const M2 dfi = xrot_deriv(phis[i]);
      const M2 left = prefix[2 * i];
      const M2 right = suffix[2 * i + 1];
      // (left * dfi * right)_{00}
      const cplx m00 = (left.a * dfi.a + left.b * dfi.c) * right.a +
                       (left.a * dfi.b + left.b * dfi.d) * right.c;
      const double dg = m00.real();
      const std::size_t fr = std::min(i, d - i);
      out.grad[fr] += 2.0 * r * dg;
    }
  }
  const double inv = 1.0 / static_cast<double>(target.nodes.size());
  out.cost *= inv;
  for (auto& gv : out.grad) gv *= inv;
  return out;
}

namespace {

std::vector<double> expand_free(const std::vector<double>& v, std::size_t d) {
  std::vector<double> phis(d + 1);
  for (std::size_t j = 0; j <= d / 2; ++j) {
    phis[j] = v[j];
    phis[d - j] = v[j];
  }
  return phis;
}

double reduce_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace

namespace {

// L-BFGS with Armijo backtracking over the free symmetric parameters;
// returns the final cost, leaving the iterate in `v`.
double lbfgs_minimize(const QSPTarget& target, std::vector<double>& v,
                      const SolveOptions& opts) {
  const std::size_t d = static_cast<std::size_t>(target.d);
  const std::size_t dt = d / 2 + 1;

  auto eval = [&](const std::vector<double>& vv) {
    return qsp_cost(expand_free(vv, d), target);
  };

  CostGrad cg = eval(v);
  const int max_iters = opts.max_iters_per_dt * static_cast<int>(dt);

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int iter = 0; iter < max_iters; ++iter) {
    if (cg.cost <= opts.target_cost) return cg.cost;

    // direction = -H grad
    std::vector<double> q = cg.grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t h = s_hist.size(); h-- > 0;) {
      double sq = 0.0;
      for (std::size_t i = 0; i < dt; ++i) sq += s_hist[h][i] * q[i];
      alpha[h] = rho_hist[h] * sq;
      for (std::size_t i = 0; i < dt; ++i) q[i] -= alpha[h] * y_hist[h][i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t i = 0; i < dt; ++i) {
        sy += s_hist.back()[i] * y_hist.back()[i];
        yy += y_hist.back()[i] * y_hist.back()[i];
      }
      if (yy > 0.0) gamma = sy / yy;
    }
    for (auto& qi : q) qi *= gamma;
    for (std::size_t h = 0; h < s_hist.size(); ++h) {
      double yq = 0.0;
      for (std::size_t i = 0; i < dt; ++i) yq += y_hist[h][i] * q[i];
      for (std::size_t i = 0; i < dt; ++i)
        q[i] += s_hist[h][i] * (alpha[h] - rho_hist[h] * yq);
    }
    std::vector<double> dir(dt);
    for (std::size_t i = 0; i < dt; ++i) dir[i] = -q[i];

    double descent = 0.0;
    for (std::size_t i = 0; i < dt; ++i) descent += dir[i] * cg.grad[i];
    if (descent >= 0.0) {  // reset to steepest descent
      for (std::size_t i = 0; i < dt; ++i) dir[i] = -cg.grad[i];
      descent = 0.0;
      for (std::size_t i = 0; i < dt; ++i) descent += dir[i] * cg.grad[i];
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    double step = 1.0;
    std::vector<double> v_new(dt);
    CostGrad cg_new;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < dt; ++i) v_new[i] = v[i] + step * dir[i];
      cg_new = eval(v_new);
      if (cg_new.cost <= cg.cost + 1e-4 * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return cg.cost;  // progress exhausted

    std::vector<double> s(dt), y(dt);
    double sy = 0.0;
    for (std::size_t i = 0; i < dt; ++i) {
      s[i] = v_new[i] - v[i];
      y[i] = cg_new.grad[i] - cg.grad[i];
      sy += s[i] * y[i];
    }
    if (sy > 1e-18) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > static_cast<std::size_t>(opts.lbfgs_memory)) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    v = std::move(v_new);
    v_new.assign(dt, 0.0);
    cg = std::move(cg_new);
  }
  return cg.cost;  // iteration cap
}

}  // namespace

PhaseFactors solve_phases(const QSPTarget& target, const SolveOptions& opts) {
  const std::size_t d = static_cast<std::size_t>(target.d);
  const std::size_t dt = d / 2 + 1;
  for (double value : target.values)
    if (std::abs(value) > 1.0)
      throw std::invalid_argument("solve_phases: target exceeds 1 at a node");

  auto finish = [&](const std::vector<double>& vv, double cost) {
    if (cost > opts.tol)
      throw ConvergenceError("solve_phases: did not reach tolerance", cost);
    PhaseFactors pf;
    pf.d = target.d;
    pf.phis = expand_free(vv, d);
    for (auto& p : pf.phis) p = reduce_angle(p);
    pf.residual = cost;
    return pf;
  };

  std::vector<double> v(dt, M_PI / 2.0);
  double cost = lbfgs_minimize(target, v, opts);
  if (cost <= opts.tol) return finish(v, cost);

  // Norm continuation for stubborn targets: walk the target amplitude up
  // from a mild scale, warm-starting each stage, then certify the final
  // unscaled cost.
  v.assign(dt, M_PI / 2.0);
  for (double scale : {0.4, 0.6, 0.8, 0.9, 0.96, 1.0}) {
    QSPTarget scaled = target;
    for (auto& value : scaled.values) value *= scale;
    for (auto& coef : scaled.coeffs) coef *= scale;
    cost = lbfgs_minimize(scaled, v, opts);
  }
  return finish(v, cost);
}

Reconstruction reconstruct_poly(const PhaseFactors& pf, int sample_count) {
  check_phis(pf.phis);
  const int m = std::max(sample_count, pf.d + 2);
  Reconstruction rec;
  rec.xs.resize(m);
  rec.values.resize(m);
  // Gauss-Chebyshev angles make the inverse transform a plain cosine sum.
  for (int i = 0; i < m; ++i) {
    const double theta = (i + 0.5) * M_PI / m;
    rec.xs[i] = std::cos(theta);
    rec.values[i] = realized_value(rec.xs[i], pf.phis);
  }
  const int ncoef = pf.d / 2 + 1;
  rec.coeffs.assign(ncoef, 0.0);
  for (int k = 0; k < ncoef; ++k) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double theta = (i + 0.5) * M_PI / m;
      s += rec.values[i] * std::cos(2.0 * k * theta);
    }
    rec.coeffs[k] = (k == 0 ? 1.0 : 2.0) * s / m;
  }
  return rec;
}

}  // namespace qetulab::qsp
