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

#include "qetulab/pauli.hpp"
#include "qetulab/sim.hpp"

namespace qetulab::trotter {

// Gate sequence realizing e^{-i theta P}. Weight-1 strings become a single
// rotation, weight-2 strings one native two-qubit rotation when `fuse` is
// set (the accounting used by the spin-chain circuits), otherwise the
// basis-change + CX-ladder + Rz compilation. Identity strings reduce to a
// global phase.
sim::Circuit pauli_exponential(const pauli::PauliString& term, double theta,
                               int nq, bool fuse = true);

// Product-formula plan. One Trotter step is kept as group-tagged blocks so
// the control-free construction can conjugate each Hamiltonian group by its
// partner string; `circuit` is the flattened step repeated `steps` times.
struct TrotterPlan {
  struct Block {
    std::size_t group = 0;
    sim::Circuit gates;
  };

  int order = 1;  // p in {1, 2}
  int steps = 1;  // r
  double tau = 0.0;
  int nq = 0;
  std::vector<Block> step_blocks;
  sim::Circuit circuit;

  // exact reversed evolution: every gate inverted, order reversed
  TrotterPlan inverse() const;
};

// p-th order product formula for e^{-i tau H} with r steps. Terms are
// exponentiated in declaration order; the second-order step is the
// palindromic Strang splitting (half-angle sweep, then the sweep with term
// order reversed). Negative tau yields the exact inverse of the positive-tau
// plan, so composing the two gives the identity.
TrotterPlan trotter_evolution(const pauli::PauliSumHamiltonian& h, double tau,
                              int order, int steps, bool fuse = true);

CMatrix dense_unitary(const TrotterPlan& plan);

// r = ceil((d * c_est / delta)^{1/p}), clamped below by 1.
int choose_trotter_steps(int d, int order, double c_est, double delta);

// Empirical Trotter prefactor: || U_plan(r_probe) - e^{-i tau H} || * r^p at
// tau = 1, measured densely.
double estimate_trotter_constant(const pauli::PauliSumHamiltonian& h,
                                 int order, int r_probe = 4);

}  // namespace qetulab::trotter
