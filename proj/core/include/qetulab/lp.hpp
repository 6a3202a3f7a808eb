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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qetulab::lp {

// Dense row-major real matrix, just enough for the simplex.
struct RMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  RMatrix() = default;
  RMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct Solution {
  std::vector<double> x;   // primal solution (free variables)
  double objective = 0.0;  // c^T x
  double gap = 0.0;        // |primal - dual| certificate
  std::size_t pivots = 0;
};

// Solve  min c^T x  s.t.  A x <= b  with x free.
//
// Internally works on the standard-form dual (min b^T u, A^T u = -c, u >= 0)
// with a dense two-phase simplex: the basis then has only dim(x) rows, which
// is what makes the min-max approximation problems cheap even when the number
// of grid constraints is large. Dantzig pricing, Bland's rule after a stall.
// Throws SolverError on infeasible/unbounded input.
Solution solve_inequality_form(const RMatrix& a, const std::vector<double>& b,
                               const std::vector<double>& c,
                               std::size_t max_pivots = 0);

}  // namespace qetulab::lp
