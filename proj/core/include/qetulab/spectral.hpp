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

#include <cstdint>

#include "qetulab/linalg.hpp"
#include "qetulab/pauli.hpp"

namespace qetulab::spectral {

struct SpectralData {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // orthonormal columns, same order
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda_max = 0.0;
  double gap = 0.0;

  cvector eigenvector(std::size_t j) const;
};

inline constexpr std::size_t kDefaultDimCap = 4096;

SpectralData exact_diagonalize(const CMatrix& h,
                               std::size_t dim_cap = kDefaultDimCap);
SpectralData exact_diagonalize(const pauli::PauliSumHamiltonian& h,
                               std::size_t dim_cap = kDefaultDimCap);

// Affine map H^sh = c1 H + c2 I placing the spectrum in [eta, pi - eta],
// plus the derived quantities used downstream.
struct SpectralShift {
  double c1 = 1.0;
  double c2 = 0.0;
  double eta = 0.0;
  double mu = 0.0;           // (E0^sh + E1^sh)/2
  double delta = 0.0;        // E1^sh - E0^sh
  double sigma_plus = 0.0;   // cos((mu - delta/2)/2)
  double sigma_minus = 0.0;  // cos((mu + delta/2)/2)

  double apply(double e) const { return c1 * e + c2; }
};

SpectralShift affine_shift(const SpectralData& spec, double eta);

// Hermitian matrix with i.i.d. uniform eigenvalues in [range_lo, range_hi]
// and a Haar-random eigenbasis; deterministic under the seed.
struct RandomSpectrum {
  CMatrix h;
  SpectralData spec;
};
RandomSpectrum build_random_spectrum(std::size_t dim, double range_lo,
                                     double range_hi, std::uint64_t seed);

}  // namespace qetulab::spectral
