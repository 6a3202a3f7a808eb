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

#include "qetulab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qetulab::spectral {

cvector SpectralData::eigenvector(std::size_t j) const {
  cvector v(eigenvectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, j);
  return v;
}

SpectralData exact_diagonalize(const CMatrix& h, std::size_t dim_cap) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("exact_diagonalize: not square");
  if (h.rows() > dim_cap)
    throw std::runtime_error("exact_diagonalize: dimension exceeds cap");
  EigResult eig = hermitian_eig(h);
  SpectralData s;
  s.eigenvalues = std::move(eig.values);
  s.eigenvectors = std::move(eig.vectors);
  s.lambda0 = s.eigenvalues.front();
  s.lambda1 = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : s.lambda0;
  s.lambda_max = s.eigenvalues.back();
  s.gap = s.lambda1 - s.lambda0;
  return s;
}

SpectralData exact_diagonalize(const pauli::PauliSumHamiltonian& h,
                               std::size_t dim_cap) {
  if (h.dim() > dim_cap)
    throw std::runtime_error("exact_diagonalize: dimension exceeds cap");
  return exact_diagonalize(pauli::dense(h), dim_cap);
}

SpectralShift affine_shift(const SpectralData& spec, double eta) {
  if (!(eta > 0.0 && eta < M_PI / 2))
    throw std::invalid_argument("affine_shift: need 0 < eta < pi/2");
  const double e0 = spec.lambda0, emax = spec.lambda_max;
  if (!(emax > e0))
    throw std::invalid_argument("affine_shift: degenerate spectrum");
  SpectralShift sh;
  sh.eta = eta;
  sh.c1 = (M_PI - 2.0 * eta) / (emax - e0);
  sh.c2 = eta - sh.c1 * e0;
  const double e0s = sh.apply(e0);
  const double e1s = sh.apply(spec.lambda1);
  sh.mu = 0.5 * (e0s + e1s);
  sh.delta = e1s - e0s;
  sh.sigma_plus = std::cos(0.5 * (sh.mu - 0.5 * sh.delta));
  sh.sigma_minus = std::cos(0.5 * (sh.mu + 0.5 * sh.delta));
  return sh;
}

RandomSpectrum build_random_spectrum(std::size_t dim, double range_lo,
                                     double range_hi, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("build_random_spectrum: dim >= 2");
  if (!(range_lo < range_hi) || range_lo <= 0.0 || range_hi >= M_PI)
    throw std::invalid_argument("build_random_spectrum: range must be inside (0, pi)");
  Rng rng(seed);
  std::vector<double> ev(dim);
  for (auto& e : ev) e = rng.uniform(range_lo, range_hi);
  std::sort(ev.begin(), ev.end());
  CMatrix v = haar_unitary(dim, rng);

  RandomSpectrum out;
  out.h = CMatrix(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        out.h(i, k) += ev[j] * v(i, j) * std::conj(v(k, j));
  // enforce exact Hermiticity against rounding
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const cplx m = 0.5 * (out.h(i, k) + std::conj(out.h(k, i)));
      out.h(i, k) = m;
      out.h(k, i) = std::conj(m);
    }
  for (std::size_t i = 0; i < dim; ++i) out.h(i, i) = out.h(i, i).real();

  out.spec.eigenvalues = ev;
  out.spec.eigenvectors = std::move(v);
  out.spec.lambda0 = ev.front();
  out.spec.lambda1 = ev[1];
  out.spec.lambda_max = ev.back();
  out.spec.gap = ev[1] - ev[0];
  return out;
}

}  // namespace qetulab::spectral
