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

#include <stdexcept>
#include <vector>

#include "qetulab/cheb.hpp"
#include "qetulab/linalg.hpp"

namespace qetulab::qsp {

// Symmetric phase factors (phi_0, ..., phi_1, phi_0) of even degree d in the
// Wz convention; entries reduced to [-pi, pi).
struct PhaseFactors {
  std::vector<double> phis;  // length d + 1, symmetric
  int d = 0;
  double residual = 0.0;  // mean-square node error at the solution

  std::size_t free_count() const { return static_cast<std::size_t>(d) / 2 + 1; }
};

// Even target polynomial pinned by its values at the positive Chebyshev
// nodes x_k = cos((2k-1) pi / (4 dt)), dt = ceil((d+1)/2).
struct QSPTarget {
  int d = 0;
  std::vector<double> coeffs;  // even Chebyshev series
  std::vector<double> nodes;
  std::vector<double> values;
};

QSPTarget make_qsp_target(const std::vector<double>& even_coeffs, int d);
inline QSPTarget make_qsp_target(const cheb::ChebApproxResult& r) {
  if (r.parity != cheb::Parity::Even)
    throw std::invalid_argument("make_qsp_target: even parity required");
  return make_qsp_target(r.coeffs, r.degree);
}

// U_Phi(x) = e^{i phi_0 X} Wz^*(x) e^{i phi_1 X} Wz(x) ... e^{i phi_0 X},
// Wz(x) = diag(e^{i arccos x}, e^{-i arccos x}). The (0,0) entry is the
// realized polynomial and is real for symmetric even sequences.
CMatrix su2_product(double x, const std::vector<double>& phis);

// Realized value g(x, Phi) = Re [U_Phi(x)]_{00}.
double realized_value(double x, const std::vector<double>& phis);

// Mean-square cost over the target nodes and its gradient with respect to
// the dt free symmetric parameters (analytic, via cached partial products).
struct CostGrad {
  double cost = 0.0;
  std::vector<double> grad;
};
CostGrad qsp_cost(const std::vector<double>& phis, const QSPTarget& target);

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double cost)
      : std::runtime_error(what), last_cost(cost) {}
  double last_cost;
};

struct SolveOptions {
  double tol = 1e-12;  // acceptance threshold on the mean-square cost
  double target_cost = 1e-25;  // the optimizer keeps going down to this
  int max_iters_per_dt = 500;  // iteration cap = this * dt
  int lbfgs_memory = 20;
};

// Quasi-Newton (L-BFGS with Armijo backtracking) from the standard symmetric
// seed, which in this convention reads (pi/2, pi/2, ..., pi/2): the usual
// (pi/4, 0, ..., 0, pi/4) of the Z-phase parametrization carried over by the
// phi_j -> phi_j + (2 - delta_j0) pi/4 correspondence between the two
// conventions. Throws ConvergenceError when the final cost misses `tol`.
PhaseFactors solve_phases(const QSPTarget& target,
                          const SolveOptions& opts = {});

// Samples of the realized polynomial on a Chebyshev-angle grid, plus the
// inverse transform back to even Chebyshev coefficients.
struct Reconstruction {
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<double> coeffs;
};
Reconstruction reconstruct_poly(const PhaseFactors& pf, int sample_count);

}  // namespace qetulab::qsp
