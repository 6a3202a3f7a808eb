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

#include "qetulab/qetu.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qetulab::qetu {

namespace {

// One query of the chain: appends the oracle gates and reports the diagonal
// ancilla phase that the affine offset (or oracle bookkeeping) contributes.
struct QueryEmitter {
  std::function<void(sim::Circuit&)> forward;
  std::function<void(sim::Circuit&)> backward;
  cplx fwd_phase0 = 1.0, fwd_phase1 = 1.0;  // diag(p0, p1) on the ancilla
  cplx bwd_phase0 = 1.0, bwd_phase1 = 1.0;
};

CMatrix slot_matrix(double phi, cplx p0, cplx p1) {
  // x-rotation applied after the diagonal phase, merged into one 1q gate
  CMatrix m(2, 2);
  const double c = std::cos(phi), s = std::sin(phi);
  m(0, 0) = c * p0;
  m(0, 1) = cplx(0.0, s) * p1;
  m(1, 0) = cplx(0.0, s) * p0;
  m(1, 1) = c * p1;
  return m;
}

// Assembles the alternating-query chain: gate order (first applied first) is
// slot(phi_d), Q_d, slot(phi_{d-1}), ..., Q_1, slot(phi_0) with Q_w the
// forward oracle for even w and the backward oracle for odd w.
sim::Circuit build_chain(int nq, const qsp::PhaseFactors& pf,
                         const QueryEmitter& em) {
  const int d = pf.d;
  if (d % 2 != 0) throw std::invalid_argument("qetu: degree must be even");
  sim::Circuit c;
  c.nq = nq;
  cplx pend0 = 1.0, pend1 = 1.0;
  c.append(sim::dense_gate({1}, slot_matrix(pf.phis[d], 1.0, 1.0), "slot"));
  for (int w = d; w >= 1; --w) {
    const bool fwd = (w % 2 == 0);
    if (fwd) {
      em.forward(c);
      pend0 = em.fwd_phase0;
      pend1 = em.fwd_phase1;
    } else {
      em.backward(c);
      pend0 = em.bwd_phase0;
      pend1 = em.bwd_phase1;
    }
    c.append(sim::dense_gate({1}, slot_matrix(pf.phis[w - 1], pend0, pend1),
                             "slot"));
  }
  return c;
}

// dense (n+1)-qubit gate |0><0| x I + |1><1| x U, not gate-counted
sim::Gate controlled_dense_oracle(int n, const CMatrix& u) {
  const std::size_t sys = u.rows();
  CMatrix full(2 * sys, 2 * sys);
  for (std::size_t i = 0; i < sys; ++i) {
    full(i, i) = 1.0;
    for (std::size_t j = 0; j < sys; ++j) full(sys + i, sys + j) = u(i, j);
  }
  std::vector<int> targets(n + 1);
  for (int q = 0; q <= n; ++q) targets[q] = q + 1;
  sim::Gate g = sim::dense_gate(std::move(targets), std::move(full), "cU");
  g.counted = false;
  return g;
}

// dense two-sided oracle diag(U_plus, U_minus) over (ancilla x system)
sim::Gate two_sided_dense_oracle(int n, const CMatrix& u_plus,
                                 const CMatrix& u_minus) {
  const std::size_t sys = u_plus.rows();
  CMatrix full(2 * sys, 2 * sys);
  for (std::size_t i = 0; i < sys; ++i)
    for (std::size_t j = 0; j < sys; ++j) {
      full(i, j) = u_plus(i, j);
      full(sys + i, sys + j) = u_minus(i, j);
    }
  std::vector<int> targets(n + 1);
  for (int q = 0; q <= n; ++q) targets[q] = q + 1;
  sim::Gate g = sim::dense_gate(std::move(targets), std::move(full), "V");
  g.counted = false;
  return g;
}

int qubit_count_of_dim(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim)
    throw std::invalid_argument("qetu: dimension is not a power of two");
  return n;
}

// shift a plan's gate targets by one so the ancilla can sit at qubit 1
sim::Circuit shifted_system_circuit(const sim::Circuit& plan_circuit) {
  sim::Circuit out;
  out.nq = plan_circuit.nq + 1;
  for (sim::Gate g : plan_circuit.gates) {
    for (int& t : g.targets) ++t;
    if (g.control) ++g.control;
    out.append(std::move(g));
  }
  return out;
}

// Control-free query: each contiguous run of same-group blocks is wrapped in
// a pair of controlled partner strings. `blocks` must already be the full
// evolution (step blocks repeated).
void emit_conjugated(sim::Circuit& c,
                     const std::vector<trotter::TrotterPlan::Block>& blocks,
                     const pauli::PauliSumHamiltonian& h) {
  const int n = static_cast<int>(h.n);
  std::size_t i = 0;
  while (i < blocks.size()) {
    std::size_t j = i;
    while (j + 1 < blocks.size() && blocks[j + 1].group == blocks[i].group) ++j;
    const auto& partner = h.groups[blocks[i].group].partner;
    if (!partner)
      throw std::runtime_error(
          "qetu: control-free mode needs a partner string for every group");
    std::vector<pauli::Op> word(n + 1, pauli::Op::I);
    for (int q = 0; q < n; ++q) word[q + 1] = partner->ops[q];
    c.append(sim::controlled_pauli(1, word));
    for (std::size_t k = i; k <= j; ++k)
      c.extend(shifted_system_circuit(blocks[k].gates));
    c.append(sim::controlled_pauli(1, word));
    i = j + 1;
  }
}

std::vector<trotter::TrotterPlan::Block> repeated_blocks(
    const trotter::TrotterPlan& plan) {
  std::vector<trotter::TrotterPlan::Block> out;
  for (int r = 0; r < plan.steps; ++r)
    out.insert(out.end(), plan.step_blocks.begin(), plan.step_blocks.end());
  return out;
}

}  // namespace

QetuCircuit build_qetu_exact(const CMatrix& h_shifted,
                             const qsp::PhaseFactors& phases, Mode mode) {
  const int n = qubit_count_of_dim(h_shifted.rows());
  QetuCircuit qc;
  qc.mode = mode;
  qc.n = n;
  qc.d = phases.d;
  qc.u_queries = phases.d;

  QueryEmitter em;
  if (mode == Mode::ControlledU) {
    const CMatrix ufwd = hermitian_exp(h_shifted, 1.0);
    const CMatrix ubwd = hermitian_exp(h_shifted, -1.0);
    em.forward = [&, g = controlled_dense_oracle(n, ufwd)](sim::Circuit& c) {
      c.append(g);
    };
    em.backward = [&, g = controlled_dense_oracle(n, ubwd)](sim::Circuit& c) {
      c.append(g);
    };
  } else {
    const double tau = mode == Mode::ControlFree ? 0.5 : 1.0;
    const CMatrix e_plus = hermitian_exp(h_shifted, -tau);  // e^{+i tau H}
    const CMatrix e_minus = hermitian_exp(h_shifted, tau);  // e^{-i tau H}
    // V = diag(e^{+i tau H}, e^{-i tau H}) with the ancilla-0 block first
    em.forward = [g = two_sided_dense_oracle(n, e_plus, e_minus)](
                     sim::Circuit& c) { c.append(g); };
    em.backward = [g = two_sided_dense_oracle(n, e_minus, e_plus)](
                      sim::Circuit& c) { c.append(g); };
  }
  qc.circuit = build_chain(n + 1, phases, em);
  return qc;
}

QetuCircuit build_qetu_trotter(const pauli::PauliSumHamiltonian& h, double c1,
                               double c2, const qsp::PhaseFactors& phases,
                               Mode mode, int order, int steps_per_half,
                               bool fuse) {
  const int n = static_cast<int>(h.n);
  QetuCircuit qc;
  qc.mode = mode;
  qc.n = n;
  qc.d = phases.d;
  qc.u_queries = phases.d;

  QueryEmitter em;
  if (mode == Mode::ControlledU) {
    // full-time plan at the same step size as two half plans
    const auto fwd_plan =
        trotter::trotter_evolution(h, c1, order, 2 * steps_per_half, fuse);
    const auto bwd_plan = fwd_plan.inverse();
    auto controlled = [n](const sim::Circuit& plan) {
      sim::Circuit out;
      out.nq = n + 1;
      for (const sim::Gate& g : plan.gates) {
        if (g.kind == sim::Gate::Kind::GlobalPhase) {
          // a controlled global phase is an ancilla phase
          CMatrix m(2, 2);
          m(0, 0) = 1.0;
          m(1, 1) = g.phase;
          out.append(sim::dense_gate({1}, std::move(m), "cphase"));
          continue;
        }
        std::vector<int> targets = {1};
        for (int t : g.targets) targets.push_back(t + 1);
        CMatrix u2 = g.u;
        const std::size_t sub = u2.rows();
        CMatrix full(2 * sub, 2 * sub);
        for (std::size_t i = 0; i < sub; ++i) {
          full(i, i) = 1.0;
          for (std::size_t j = 0; j < sub; ++j)
            full(sub + i, sub + j) = u2(i, j);
        }
        out.append(sim::dense_gate(std::move(targets), std::move(full), "cG"));
      }
      return out;
    };
    em.forward = [cf = controlled(fwd_plan.circuit)](sim::Circuit& c) {
      c.extend(cf);
    };
    em.backward = [cb = controlled(bwd_plan.circuit)](sim::Circuit& c) {
      c.extend(cb);
    };
    em.fwd_phase1 = std::polar(1.0, -c2);
    em.bwd_phase1 = std::polar(1.0, c2);
  } else if (mode == Mode::ControlFree) {
    // two-sided half-time oracle via partner conjugation: the ancilla-0
    // branch runs the backward half plan, the ancilla-1 branch is flipped by
    // the partner strings
    const auto half_fwd =
        trotter::trotter_evolution(h, 0.5 * c1, order, steps_per_half, fuse);
    const auto half_bwd = half_fwd.inverse();
    auto fwd_blocks = repeated_blocks(half_bwd);
    auto bwd_blocks = repeated_blocks(half_fwd);
    em.forward = [fwd_blocks, &h](sim::Circuit& c) {
      emit_conjugated(c, fwd_blocks, h);
    };
    em.backward = [bwd_blocks, &h](sim::Circuit& c) {
      emit_conjugated(c, bwd_blocks, h);
    };
    em.fwd_phase0 = std::polar(1.0, 0.5 * c2);
    em.fwd_phase1 = std::polar(1.0, -0.5 * c2);
    em.bwd_phase0 = std::polar(1.0, -0.5 * c2);
    em.bwd_phase1 = std::polar(1.0, 0.5 * c2);
  } else {
    throw std::invalid_argument(
        "build_qetu_trotter: ControlledV needs the exact-oracle builder");
  }
  qc.circuit = build_chain(n + 1, phases, em);
  return qc;
}

double verify_block_encoding(const QetuCircuit& qc, const CMatrix& h_shifted,
                             const std::vector<double>& f_even_coeffs) {
  const std::size_t sys = h_shifted.rows();
  const CMatrix u = sim::circuit_unitary(qc.circuit);
  // corner block (<0| x I) U (|0> x I): ancilla is the most significant bit
  CMatrix block(sys, sys);
  for (std::size_t i = 0; i < sys; ++i)
    for (std::size_t j = 0; j < sys; ++j) block(i, j) = u(i, j);

  const EigResult eig = hermitian_eig(h_shifted);
  std::vector<double> fvals(eig.values.size());
  for (std::size_t k = 0; k < fvals.size(); ++k) {
    const double arg = qc.mode == Mode::ControlledV
                           ? std::cos(eig.values[k])
                           : std::cos(0.5 * eig.values[k]);
    fvals[k] = cheb::eval_cheb(f_even_coeffs, cheb::Parity::Even, arg);
  }
  CMatrix target = hermitian_function(eig, fvals);
  block -= target;
  return operator_norm(block);
}

BlockEncodingResult apply_and_postselect(const QetuCircuit& qc,
                                         const cvector& system_input) {
  const std::size_t sys = system_input.size();
  cvector joint(2 * sys, 0.0);
  for (std::size_t i = 0; i < sys; ++i) joint[i] = system_input[i];
  sim::StateVector sv(qc.n + 1, std::move(joint));
  sv.run(qc.circuit);

  BlockEncodingResult out;
  out.joint_state = sv.amplitudes();
  double p0 = 0.0;
  for (std::size_t i = 0; i < sys; ++i) p0 += std::norm(out.joint_state[i]);
  out.success_amplitude = std::sqrt(p0);
  out.post_state.assign(sys, 0.0);
  if (out.success_amplitude < 1e-12) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < sys; ++i)
    out.post_state[i] = out.joint_state[i] / out.success_amplitude;
  return out;
}

QetuCircuit build_walk_qetu(const sim::Circuit& w,
                            const qsp::PhaseFactors& phases) {
  // registers: ancilla = qubit 1, flag = qubit 2, system = 3 .. nq+1
  const int n_inner = w.nq;  // flag + system
  QetuCircuit qc;
  qc.mode = Mode::ControlledU;
  qc.n = n_inner;
  qc.d = phases.d;
  qc.u_queries = phases.d;

  const sim::Circuit w_sh = shifted_system_circuit(w);
  const sim::Circuit w_sh_inv = w_sh.inverse();
  std::vector<int> all_inner(n_inner);
  for (int q = 0; q < n_inner; ++q) all_inner[q] = q + 2;
  std::vector<pauli::Op> zflag(n_inner + 1, pauli::Op::I);
  zflag[1] = pauli::Op::Z;

  // C[R0 R1]: R1 = W Refl W^dag applied first, then R0 = Z on the flag
  auto fwd = [&](sim::Circuit& c) {
    c.extend(w_sh_inv);
    c.append(sim::controlled_reflection(1, all_inner));
    c.extend(w_sh);
    c.append(sim::controlled_pauli(1, zflag));
  };
  // C[(R0 R1)^dag] = C[R1 R0]
  auto bwd = [&](sim::Circuit& c) {
    c.append(sim::controlled_pauli(1, zflag));
    c.extend(w_sh_inv);
    c.append(sim::controlled_reflection(1, all_inner));
    c.extend(w_sh);
  };

  QueryEmitter em;
  em.forward = fwd;
  em.backward = bwd;
  qc.circuit = build_chain(n_inner + 1, phases, em);
  return qc;
}

}  // namespace qetulab::qetu
