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
#include <string>
#include <vector>

#include "qetulab/linalg.hpp"
#include "qetulab/pauli.hpp"

namespace qetulab::sim {

// Gate-wise depolarizing noise; one-qubit channels run at r_dplz/10 and
// two-qubit channels at r_dplz, both in the state-replacement convention
// rho -> (1-lambda) rho + lambda I/2^k (x) tr_k rho.
struct NoiseModel {
  double r_dplz = 0.0;

  double one_qubit_rate() const { return r_dplz / 10.0; }
  double two_qubit_rate() const { return r_dplz; }
};

struct GateCount {
  std::int64_t n_g1 = 0;
  std::int64_t n_g2 = 0;
};

// Qubits are numbered 1..nq with qubit 1 the most significant bit of the
// basis index.
struct Gate {
  enum class Kind {
    Dense,               // dense unitary on `targets`
    ControlledPauli,     // applies the word when `control` is |1>
    Reflection,          // 2|0...0><0...0| - I on `targets`
    ControlledReflection,  // reflection on `targets` when `control` is |1>
    GlobalPhase,         // scalar phase; bookkeeping only
  };

  Kind kind = Kind::Dense;
  std::vector<int> targets;
  int control = 0;
  CMatrix u;                  // Dense: 2^k x 2^k
  std::vector<pauli::Op> word;  // ControlledPauli
  cplx phase = 1.0;           // GlobalPhase
  bool counted = true;
  std::string label;

  Gate inverse() const;
};

Gate dense_gate(std::vector<int> targets, CMatrix u, std::string label = {});
Gate x_rotation(int q, double phi);  // e^{i phi X}
Gate z_rotation(int q, double phi);  // e^{i phi Z}
Gate hadamard(int q);
Gate pauli_gate(int q, pauli::Op op);
Gate phase_gate_s_dag(int q);  // S^dag with S = diag(1, i)
Gate controlled_pauli(int control, const std::vector<pauli::Op>& word);
Gate reflection_about_zero(std::vector<int> targets);
Gate controlled_reflection(int control, std::vector<int> targets);
Gate global_phase(cplx phase);

struct Circuit {
  int nq = 0;
  std::vector<Gate> gates;

  void append(Gate g) { gates.push_back(std::move(g)); }
  void extend(const Circuit& other);
  Circuit inverse() const;
  GateCount counts() const;
  std::string dump() const;  // one gate per line, for debugging
};

// Gate-count conventions: dense 1q = one n_g1; dense 2q = one n_g2 (native
// two-qubit rotations); dense on k >= 3 qubits = 2(k-1) n_g2 (not emitted by
// the compiled paths); controlled Pauli word = weight n_g2; reflections on k
// qubits = 2 n_g1 + 6(k-1) n_g2 for k >= 2, a plain Z for k = 1.
GateCount count_gate(const Gate& g);

class StateVector {
 public:
  explicit StateVector(int nq);
  StateVector(int nq, cvector amplitudes);

  int nq() const { return nq_; }
  std::size_t dim() const { return amp_.size(); }
  const cvector& amplitudes() const { return amp_; }
  cvector& amplitudes() { return amp_; }

  void apply(const Gate& g);
  void run(const Circuit& c);

  double norm() const { return norm2(amp_); }
  // probability that `qubit` reads 0
  double prob_zero(int qubit) const;
  // renormalized projection onto `qubit` = bit; returns the branch probability
  double project(int qubit, int bit);

  std::vector<double> probabilities(const std::vector<int>& qubits) const;

 private:
  int nq_;
  cvector amp_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(int nq);
  explicit DensityMatrix(const StateVector& psi);

  int nq() const { return nq_; }
  std::size_t dim() const { return rho_.rows(); }
  const CMatrix& rho() const { return rho_; }

  // applies the gate and, when a noise model is set, the depolarizing
  // channel on the gate's support
  void apply(const Gate& g);
  void run(const Circuit& c);

  void set_noise(NoiseModel m) { noise_ = m; }

  double trace() const;
  std::vector<double> probabilities(const std::vector<int>& qubits) const;

  void depolarize_one(int qubit, double lambda);
  void depolarize_two(int q1, int q2, double lambda);

 private:
  void apply_unitary(const Gate& g);
  void apply_noise_for(const Gate& g);

  int nq_;
  CMatrix rho_;
  NoiseModel noise_;
};

// Multinomial sampling from the exact marginal distribution over `qubits`.
// Outcomes are bit strings of the measured qubits in the given order,
// packed most-significant-first.
struct Histogram {
  std::vector<int> qubits;
  std::vector<std::pair<std::uint64_t, std::int64_t>> counts;
  std::int64_t shots = 0;

  std::string to_csv() const;  // `bitstring,count`
};
Histogram sample_bitstrings(const std::vector<double>& probabilities,
                            const std::vector<int>& qubits,
                            std::int64_t shots, std::uint64_t seed);

// e^{-i tau H} through the eigendecomposition; throws above the dim cap.
CMatrix exact_evolution(const CMatrix& h, double tau,
                        std::size_t dim_cap = 4096);

// Gate counts of the control-free TFIM circuit at degree d with r Trotter
// steps per query: n_g1 = d(nr+1)+1, n_g2 = d((n-1)r + 2n).
GateCount tfim_gate_counts(int n, int d, int r);
double alpha_dem(const GateCount& counts, double r_dplz);

// Dense unitary of a circuit (testing aid; dim 2^nq).
CMatrix circuit_unitary(const Circuit& c);

}  // namespace qetulab::sim
