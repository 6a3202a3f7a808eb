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

#include "qetulab/cheb.hpp"
#include "qetulab/linalg.hpp"
#include "qetulab/spectral.hpp"

namespace qetulab::engine {

// A ground-state problem reduced to what the algorithms consume: the shifted
// spectrum (inside [eta, pi - eta]) and the initial state's overlap weights.
// Amplitudes of QET-U runs are evaluated exactly in this basis, which equals
// running the circuit with exactly solved phases; the circuit engines
// cross-check this equivalence at small sizes in the test suite.
struct EigenProblem {
  std::vector<double> lambda;  // shifted eigenvalues, ascending
  std::vector<double> weight;  // |<v_j | phi_0>|^2

  double lambda0() const { return lambda.front(); }

  // A = || F(cos(H^sh / 2)) |phi_0> ||
  double amplitude(const std::vector<double>& f_even_coeffs) const;
};

EigenProblem shifted_problem(const spectral::SpectralData& spec,
                             const spectral::SpectralShift& shift,
                             const cvector& phi0);

// |phi_0> = gamma |v_0> + sqrt(1 - gamma^2) |u> with |u> a seeded random
// unit vector orthogonal to the ground state.
cvector planted_overlap_state(const spectral::SpectralData& spec, double gamma,
                              std::uint64_t seed);

}  // namespace qetulab::engine
