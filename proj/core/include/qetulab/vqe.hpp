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

namespace qetulab::vqe {

// Per-qubit basis rotation diagonalizing a measurement group: I for
// Z-strings, H for X-strings, H S^dag for Y-strings (S = diag(1, i)).
enum class BasisRotation { Identity, Hadamard, HadamardSdag };

struct MeasuredTerm {
  double coeff = 0.0;
  std::uint64_t mask = 0;  // measured qubits entering the parity, MSB-first
};

struct MeasurementGroup {
  BasisRotation rotation = BasisRotation::Identity;
  std::vector<MeasuredTerm> terms;
};

// Splits the Hamiltonian terms by letter type into simultaneously
// diagonalizable groups; throws on mixed-letter terms (not diagonalized by
// any of the three product rotations).
std::vector<MeasurementGroup> make_measurement_groups(
    const pauli::PauliSumHamiltonian& h);

// Basis-change circuit V_k on the system register (qubit offset allows an
// ancilla in front).
sim::Circuit rotation_circuit(BasisRotation rot, int n, int qubit_offset = 0);

// <H_k> from a bitstring histogram measured after V_k; all qubits measured,
// most significant first.
double group_energy_from_counts(const MeasurementGroup& group,
                                const sim::Histogram& counts);

// Full estimate from per-group histograms (same order as the groups).
double grouped_energy(const std::vector<MeasurementGroup>& groups,
                      const std::vector<sim::Histogram>& histograms);

// TFIM shortcut: Z-basis counts give the ZZ bonds, Hadamard-basis counts the
// transverse field.
double tfim_energy_from_counts(const sim::Histogram& counts_z,
                               const sim::Histogram& counts_x, double g,
                               int n);

// Exact-marginal reference: <psi|H|psi> evaluated through the groups from
// exact probability vectors (testing aid for the shot-noise paths).
double grouped_energy_exact(const std::vector<MeasurementGroup>& groups,
                            const std::vector<std::vector<double>>& probs);

// Estimate with a standard error from multinomial propagation; the
// within-group covariance between terms sharing a histogram is exact (the
// per-shot group value has a computable second moment).
struct EnergyEstimate {
  double energy = 0.0;
  double stderr_ = 0.0;

  std::string to_json() const;  // one-line {"energy": ..., "stderr": ...}
};
EnergyEstimate grouped_energy_with_error(
    const std::vector<MeasurementGroup>& groups,
    const std::vector<sim::Histogram>& histograms);

// Parse the circuit-sim histogram CSV (`bitstring,count` lines).
sim::Histogram parse_histogram_csv(const std::string& csv);

}  // namespace qetulab::vqe
