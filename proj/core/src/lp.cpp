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

#include "qetulab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qetulab::lp {

namespace {

constexpr double kReducedCostTol = 1e-10;
constexpr double kRatioTol = 1e-11;
constexpr double kPhase1Tol = 1e-8;

// Standard-form LP: min f^T u, D u = g, u >= 0. Two-phase dense simplex with
// an explicit basis inverse; the basis has only D.rows rows, so large column
// counts (fine grids) stay cheap per pivot.
class StandardSimplex {
 public:
  StandardSimplex(RMatrix d, std::vector<double> g, std::vector<double> f)
      : d_(std::move(d)), g_(std::move(g)), f_(std::move(f)),
        n_(d_.rows), m_(d_.cols) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (g_[i] < 0.0) {
        g_[i] = -g_[i];
        for (std::size_t j = 0; j < m_; ++j) d_(i, j) = -d_(i, j);
        flipped_.push_back(i);
      }
    }
    binv_ = RMatrix(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) binv_(i, i) = 1.0;
    basis_.resize(n_);
    is_basic_.assign(m_, false);
    for (std::size_t i = 0; i < n_; ++i) basis_[i] = m_ + i;  // artificials
    xb_ = g_;
  }

  double phase1(std::size_t max_pivots) {
    std::vector<double> cost(m_, 0.0);
    run(cost, /*artificial_cost=*/1.0, max_pivots);
    double art = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      if (basis_[i] >= m_) art += xb_[i];
    return art;
  }

  // Pivot any remaining zero-level artificials out where a nonzero pivot
  // element exists; leftovers mark redundant rows and are left in place.
  void drive_out_artificials() {
    std::vector<double> bcol(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (basis_[i] < m_) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        if (is_basic_[j]) continue;
        double piv = 0.0;
        for (std::size_t k = 0; k < n_; ++k) piv += binv_(i, k) * d_(k, j);
        if (std::abs(piv) > 1e-7) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void phase2(std::size_t max_pivots) { run(f_, 0.0, max_pivots); }

  double objective() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      if (basis_[i] < m_) s += f_[basis_[i]] * xb_[i];
    return s;
  }

  // Simplex multipliers pi = c_B^T B^{-1} for the phase-2 cost, mapped back
  // through the row sign flips. Basic artificials (redundant rows) carry
  // zero cost.
  std::vector<double> multipliers() const {
    std::vector<double> pi(n_, 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n_; ++i)
        if (basis_[i] < m_) s += f_[basis_[i]] * binv_(i, k);
      pi[k] = s;
    }
    for (std::size_t i : flipped_) pi[i] = -pi[i];
    return pi;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  void pivot(std::size_t row, std::size_t enter) {
    std::vector<double> bcol(n_);
    apply_binv_column(enter, bcol);
    pivot_with_column(row, enter, bcol);
  }

  void apply_binv_column(std::size_t j, std::vector<double>& bcol) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n_; ++k) s += binv_(i, k) * d_(k, j);
      bcol[i] = s;
    }
  }

  void pivot_with_column(std::size_t row, std::size_t enter,
                         const std::vector<double>& bcol) {
    const double piv = bcol[row];
    const double inv = 1.0 / piv;
    for (std::size_t k = 0; k < n_; ++k) binv_(row, k) *= inv;
    xb_[row] *= inv;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row) continue;
      const double factor = bcol[i];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k)
        binv_(i, k) -= factor * binv_(row, k);
      xb_[i] -= factor * xb_[row];
      if (xb_[i] < 0.0 && xb_[i] > -1e-11) xb_[i] = 0.0;
    }
    if (basis_[row] < m_) is_basic_[basis_[row]] = false;
    basis_[row] = enter;
    is_basic_[enter] = true;
    ++pivots_;
  }

  // Simplex loop for cost vector `cost` over the real columns; artificial
  // columns never enter and carry `artificial_cost` while basic.
  void run(const std::vector<double>& cost, double artificial_cost,
           std::size_t max_pivots) {
    std::vector<double> pi(n_), bcol(n_);
    std::size_t stall = 0;
    double last_obj = std::numeric_limits<double>::infinity();
    bool bland = false;

    while (true) {
      if (max_pivots && pivots_ > max_pivots)
        throw SolverError("lp: pivot limit exceeded");
      for (std::size_t k = 0; k < n_; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
          const double ci =
              basis_[i] < m_ ? cost[basis_[i]] : artificial_cost;
          s += ci * binv_(i, k);
        }
        pi[k] = s;
      }
      std::ptrdiff_t enter = -1;
      double best = -kReducedCostTol;
      for (std::size_t j = 0; j < m_; ++j) {
        if (is_basic_[j]) continue;
        double rc = cost[j];
        const double* dj = &d_.a[j];  // column j strided by cols
        for (std::size_t k = 0; k < n_; ++k) rc -= pi[k] * dj[k * m_];
        if (bland) {
          if (rc < -kReducedCostTol) {
            enter = static_cast<std::ptrdiff_t>(j);
            break;
          }
        } else if (rc < best) {
          best = rc;
          enter = static_cast<std::ptrdiff_t>(j);
        }
      }
      if (enter < 0) return;

      apply_binv_column(static_cast<std::size_t>(enter), bcol);

      // Zero-level artificial rows with a nonzero pivot entry leave first so
      // artificials can never climb above zero again.
      std::ptrdiff_t leave = -1;
      for (std::size_t i = 0; i < n_; ++i) {
        if (basis_[i] >= m_ && xb_[i] <= kRatioTol && std::abs(bcol[i]) > kRatioTol) {
          leave = static_cast<std::ptrdiff_t>(i);
          break;
        }
      }
      if (leave < 0) {
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i) {
          if (bcol[i] > kRatioTol) {
            const double ratio = xb_[i] / bcol[i];
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && leave >= 0 &&
                 basis_[i] > basis_[static_cast<std::size_t>(leave)])) {
              best_ratio = ratio;
              leave = static_cast<std::ptrdiff_t>(i);
            }
          }
        }
      }
      if (leave < 0) throw SolverError("lp: unbounded (primal infeasible)");
      pivot_with_column(static_cast<std::size_t>(leave),
                        static_cast<std::size_t>(enter), bcol);

      double obj = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double ci = basis_[i] < m_ ? cost[basis_[i]] : artificial_cost;
        obj += ci * xb_[i];
      }
      if (obj > last_obj - 1e-13) {
        if (++stall > 2 * n_ + 50) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
      last_obj = obj;
    }
  }

  RMatrix d_;
  std::vector<double> g_, f_;
  std::size_t n_, m_;
  RMatrix binv_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<double> xb_;
  std::vector<std::size_t> flipped_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution solve_inequality_form(const RMatrix& a, const std::vector<double>& b,
                               const std::vector<double>& c,
                               std::size_t max_pivots) {
  const std::size_t m = a.rows, n = a.cols;
  if (b.size() != m || c.size() != n)
    throw std::invalid_argument("lp: shape mismatch");
  if (max_pivots == 0) max_pivots = 60 * (m + n) + 20000;

  // dual:  min b^T u  s.t.  A^T u = -c,  u >= 0
  RMatrix at(n, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) at(j, i) = a(i, j);
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = -c[j];

  StandardSimplex splx(std::move(at), std::move(g), b);
  const double art = splx.phase1(max_pivots);
  if (art > kPhase1Tol)
    throw SolverError("lp: dual infeasible (primal unbounded), residual " +
                      std::to_string(art));
  splx.drive_out_artificials();
  splx.phase2(max_pivots);

  Solution sol;
  sol.x = splx.multipliers();
  sol.pivots = splx.pivots();
  double primal = 0.0;
  for (std::size_t j = 0; j < n; ++j) primal += c[j] * sol.x[j];
  sol.objective = primal;
  sol.gap = std::abs(primal + splx.objective());
  return sol;
}

}  // namespace qetulab::lp
