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

#include <optional>

#include "qetulab/qsp.hpp"
#include "qetulab/sim.hpp"
#include "qetulab/spectral.hpp"
#include "qetulab/trotter.hpp"

namespace qetulab::qetu {

// Circuit family. ControlledU alternates controlled e^{-i H} / e^{+i H}
// queries and realizes F(cos(H/2)); ControlledV uses the two-sided oracle
// diag(e^{+iH}, e^{-iH}) and realizes F(cos H); ControlFree implements the
// two-sided oracle for half-time evolution through partner-string
// conjugation and realizes F(cos(H/2)) without controlling the evolution.
enum class Mode { ControlledU, ControlledV, ControlFree };

// The ancilla is qubit 1; system qubits are 2 .. n+1. The control convention
// throughout: a controlled operation acts on the system when the ancilla
// reads |1>.
struct QetuCircuit {
  sim::Circuit circuit;
  Mode mode = Mode::ControlledU;
  int n = 0;  // system qubits
  int d = 0;
  std::int64_t u_queries = 0;  // evolution-oracle applications (= d)
};

// Exact dense oracle built from the shifted Hamiltonian H^sh (the affine
// offset is inside the matrix). Works for every mode; oracle gates are not
// gate-counted (queries are the cost unit for this path).
QetuCircuit build_qetu_exact(const CMatrix& h_shifted,
                             const qsp::PhaseFactors& phases, Mode mode);

// Trotterized oracle for H^sh = c1 H + c2. `steps_per_half` is the step
// count of each half-time evolution; the full-time plan of ControlledU /
// ControlledV uses 2x the steps at the same step size so that all modes ride
// the same splitting. The c2 offset enters as ancilla phases merged into the
// rotation slots. ControlFree requires a partner string on every nonempty
// group and wraps each group run in a pair of controlled partner strings.
QetuCircuit build_qetu_trotter(const pauli::PauliSumHamiltonian& h, double c1,
                               double c2, const qsp::PhaseFactors& phases,
                               Mode mode, int order, int steps_per_half,
                               bool fuse = true);

// || (<0| x I) circuit (|0> x I) - F(cos(H^sh/2)) ||  (F(cos H^sh) for
// ControlledV), computed densely through the shifted spectrum.
double verify_block_encoding(const QetuCircuit& qc, const CMatrix& h_shifted,
                             const std::vector<double>& f_even_coeffs);

struct BlockEncodingResult {
  double success_amplitude = 0.0;
  cvector post_state;   // system register, normalized
  cvector joint_state;  // full (ancilla x system) register
  bool degenerate = false;  // success amplitude below threshold
};

// Runs |0> (x) |psi_in> through the circuit and post-selects ancilla 0.
BlockEncodingResult apply_and_postselect(const QetuCircuit& qc,
                                         const cvector& system_input);

// QET-U over the walk operator R0 R1 of a success-flagged unitary W acting
// on (flag + n system) qubits: R0 reflects about flag |0>, R1 about the
// W-image of |0...0>. The result acts on (ancilla + flag + n) qubits and
// block-encodes P(cos(L/2)) with R0 R1 = e^{-iL}; on the two-dimensional
// rotation subspace this is P(A) for the success amplitude A.
QetuCircuit build_walk_qetu(const sim::Circuit& w,
                            const qsp::PhaseFactors& phases);

}  // namespace qetulab::qetu
