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

#include "qetulab/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace qetulab::engine {

double EigenProblem::amplitude(const std::vector<double>& f_even_coeffs) const {
  double a2 = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (weight[j] == 0.0) continue;
    const double f = cheb::eval_cheb(f_even_coeffs, cheb::Parity::Even,
                                     std::cos(0.5 * lambda[j]));
    a2 += weight[j] * f * f;
  }
  return std::sqrt(std::min(1.0, a2));
}

EigenProblem shifted_problem(const spectral::SpectralData& spec,
                             const spectral::SpectralShift& shift,
                             const cvector& phi0) {
  const std::size_t dim = spec.eigenvalues.size();
  if (phi0.size() != dim)
    throw std::invalid_argument("shifted_problem: state dimension mismatch");
  EigenProblem p;
  p.lambda.resize(dim);
  p.weight.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    p.lambda[j] = shift.apply(spec.eigenvalues[j]);
    cplx ip = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      ip += std::conj(spec.eigenvectors(i, j)) * phi0[i];
    p.weight[j] = std::norm(ip);
  }
  return p;
}

cvector planted_overlap_state(const spectral::SpectralData& spec, double gamma,
                              std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("planted_overlap_state: gamma in (0, 1]");
  const std::size_t dim = spec.eigenvalues.size();
  cvector v0 = spec.eigenvector(0);
  if (gamma == 1.0) return v0;

  Rng rng(seed);
  cvector u(dim);
  for (auto& x : u) x = cplx(rng.normal(), rng.normal());
  const cplx proj = dot(v0, u);
  for (std::size_t i = 0; i < dim; ++i) u[i] -= proj * v0[i];
  normalize(u);

  cvector phi0(dim);
  const double rest = std::sqrt(1.0 - gamma * gamma);
  for (std::size_t i = 0; i < dim; ++i) phi0[i] = gamma * v0[i] + rest * u[i];
  return phi0;
}

}  // namespace qetulab::engine
