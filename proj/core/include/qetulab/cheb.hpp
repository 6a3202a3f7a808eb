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

#include <functional>
#include <string>
#include <vector>

namespace qetulab::cheb {

enum class Parity { Even, Full };

// Target segment in x space: constant value or a pointwise function. For
// Parity::Even segments live in [0, 1]; the mirror image is implied by the
// basis.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double target = 0.0;
  std::function<double(double)> target_fn;  // overrides `target` when set

  double target_at(double x) const { return target_fn ? target_fn(x) : target; }
};

struct ApproxSpec {
  int degree = 0;       // even when parity == Even
  int grid_size = 400;  // M Chebyshev points on [-1, 1]
  double cap = 0.999;   // |F(x_j)| <= cap everywhere on the grid
  Parity parity = Parity::Even;
  std::vector<Segment> segments;
};

struct ChebApproxResult {
  int degree = 0;
  Parity parity = Parity::Even;
  std::vector<double> coeffs;  // c_k for T_{2k} (Even) or T_k (Full)
  double eps_star = 0.0;       // achieved min-max error on the segments
  double lp_gap = 0.0;         // duality-gap certificate from the solver
  std::vector<double> grid;    // the grid points used
};

// M Chebyshev points -cos(j pi / (M-1)), j = 0..M-1.
std::vector<double> cheb_grid(int m);

double eval_cheb(const std::vector<double>& coeffs, Parity parity, double x);
inline double eval_cheb(const ChebApproxResult& r, double x) {
  return eval_cheb(r.coeffs, r.parity, x);
}

struct ShiftedSignSpec {
  double sigma_min = 0.0;
  double sigma_minus = 0.0;
  double sigma_plus = 0.0;
  double sigma_max = 0.0;
  double c = 0.999;
};

// sigma_+- = cos((mu -+ delta/2)/2), sigma_min = cos((pi-eta)/2),
// sigma_max = cos(eta/2). Requires eta <= mu - delta/2 < mu + delta/2 <= pi - eta.
ShiftedSignSpec shifted_sign_spec(double mu, double delta, double eta,
                                  double c);

// Segments [sigma_min, sigma_minus] -> 0 and [sigma_plus, sigma_max] -> c.
ApproxSpec make_shifted_sign_approx(const ShiftedSignSpec& s, int degree,
                                    int grid_size = 400);

// Min-max fit by linear programming; certified optimum (duality gap <= 1e-9).
ChebApproxResult solve_minmax(const ApproxSpec& spec);

struct DegreeSearchResult {
  int degree = 0;
  ChebApproxResult result;
};

// Smallest even degree whose eps* meets err_goal, found by doubling from
// `hint` (or from 0) and then bisecting. Throws if the cap is exceeded.
DegreeSearchResult degree_search(
    const std::function<ApproxSpec(int)>& spec_for_degree, double err_goal,
    int degree_cap = 5000, int hint = 0);

// Analytic large-degree constructor: Gaussian-mollified step in the angle
// variable theta = arccos(x). The polynomial is ~c for theta <= theta0 - w
// (and the mirror band at pi - theta0), ~0 for theta in the middle, with
// closed-form even Chebyshev coefficients. Errors are measured by sampling.
struct StepPoly {
  std::vector<double> coeffs;  // even series
  int degree = 0;
  double plateau_err = 0.0;  // max |F - c| on the plateau region
  double stop_err = 0.0;     // max |F| on the suppressed region
  double max_abs = 0.0;      // max |F| on [-1, 1]
};
StepPoly erf_step_poly(double theta0, double halfwidth, double c,
                       double eps_req);

// Step polynomial for the bisection: LP min-max while the predicted degree
// fits lp_budget, the erf construction beyond. theta0 and halfwidth are in
// the angle variable (half the energy variable).
struct StepBuild {
  std::vector<double> coeffs;
  int degree = 0;
  double err = 0.0;
  bool used_lp = false;
};
StepBuild build_step_polynomial(double theta0, double halfwidth, double c,
                                double eps_req, int lp_budget = 600,
                                int degree_cap = 2'000'000);

}  // namespace qetulab::cheb
