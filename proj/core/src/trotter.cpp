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

#include "qetulab/trotter.hpp"

#include <cmath>
#include <stdexcept>

namespace qetulab::trotter {

namespace {

using pauli::Op;

// e^{-i theta P} on the string's support: P^2 = I for a unit word, so the
// exponential is cos(theta) I - i sin(theta) P.
CMatrix rotation_matrix(const std::vector<Op>& support_ops, double theta) {
  pauli::PauliString p;
  p.ops = support_ops;
  CMatrix pm = pauli::dense(p);
  const std::size_t dim = pm.rows();
  CMatrix u(dim, dim);
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) u(i, j) = cplx(0.0, -s) * pm(i, j);
    u(i, i) += c;
  }
  return u;
}

}  // namespace

sim::Circuit pauli_exponential(const pauli::PauliString& term, double theta,
                               int nq, bool fuse) {
  sim::Circuit c;
  c.nq = nq;

  std::vector<int> support;
  std::vector<Op> support_ops;
  for (std::size_t q = 0; q < term.ops.size(); ++q)
    if (term.ops[q] != Op::I) {
      support.push_back(static_cast<int>(q) + 1);
      support_ops.push_back(term.ops[q]);
    }

  if (support.empty()) {
    c.append(sim::global_phase(std::polar(1.0, -theta)));
    return c;
  }
  if (support.size() == 1 || (fuse && support.size() == 2)) {
    c.append(sim::dense_gate(support, rotation_matrix(support_ops, theta),
                             "expP"));
    return c;
  }

  // basis-in (X -> H, Y -> H S^dag), CX ladder, Rz(2 theta), undo
  sim::Circuit basis_in;
  basis_in.nq = nq;
  for (std::size_t t = 0; t < support.size(); ++t) {
    if (support_ops[t] == Op::X) {
      basis_in.append(sim::hadamard(support[t]));
    } else if (support_ops[t] == Op::Y) {
      basis_in.append(sim::phase_gate_s_dag(support[t]));
      basis_in.append(sim::hadamard(support[t]));
    }
  }
  sim::Circuit ladder;
  ladder.nq = nq;
  CMatrix cx(4, 4);
  cx(0, 0) = 1.0;
  cx(1, 1) = 1.0;
  cx(2, 3) = 1.0;
  cx(3, 2) = 1.0;
  for (std::size_t t = 0; t + 1 < support.size(); ++t)
    ladder.append(sim::dense_gate({support[t], support[t + 1]}, cx, "CX"));

  c.extend(basis_in);
  c.extend(ladder);
  c.append(sim::z_rotation(support.back(), -theta));
  c.extend(ladder.inverse());
  c.extend(basis_in.inverse());
  return c;
}

TrotterPlan TrotterPlan::inverse() const {
  TrotterPlan inv;
  inv.order = order;
  inv.steps = steps;
  inv.tau = -tau;
  inv.nq = nq;
  inv.circuit = circuit.inverse();
  inv.step_blocks.reserve(step_blocks.size());
  for (auto it = step_blocks.rbegin(); it != step_blocks.rend(); ++it)
    inv.step_blocks.push_back({it->group, it->gates.inverse()});
  return inv;
}

TrotterPlan trotter_evolution(const pauli::PauliSumHamiltonian& h, double tau,
                              int order, int steps, bool fuse) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("trotter_evolution: order must be 1 or 2");
  if (steps < 1) throw std::invalid_argument("trotter_evolution: steps >= 1");
  if (tau < 0.0) return trotter_evolution(h, -tau, order, steps, fuse).inverse();

  TrotterPlan plan;
  plan.order = order;
  plan.steps = steps;
  plan.tau = tau;
  plan.nq = static_cast<int>(h.n);

  const double dt = tau / steps;
  auto group_block = [&](std::size_t g, double angle_scale,
                         bool reversed) {
    TrotterPlan::Block blk;
    blk.group = g;
    blk.gates.nq = plan.nq;
    const auto& terms = h.groups[g].terms;
    if (!reversed) {
      for (const auto& t : terms)
        blk.gates.extend(pauli_exponential(t, angle_scale * t.coeff, plan.nq, fuse));
    } else {
      for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        blk.gates.extend(pauli_exponential(*it, angle_scale * it->coeff, plan.nq, fuse));
    }
    return blk;
  };

  if (order == 1) {
    for (std::size_t g = 0; g < h.groups.size(); ++g) {
      if (h.groups[g].terms.empty()) continue;
      plan.step_blocks.push_back(group_block(g, dt, false));
    }
  } else {
    // Strang: half-angle sweep over groups, then the mirrored sweep with
    // term order reversed, so the flat step is palindromic.
    for (std::size_t g = 0; g < h.groups.size(); ++g) {
      if (h.groups[g].terms.empty()) continue;
      plan.step_blocks.push_back(group_block(g, 0.5 * dt, false));
    }
    for (std::size_t g = h.groups.size(); g-- > 0;) {
      if (h.groups[g].terms.empty()) continue;
      plan.step_blocks.push_back(group_block(g, 0.5 * dt, true));
    }
  }

  plan.circuit.nq = plan.nq;
  for (int r = 0; r < steps; ++r)
    for (const auto& blk : plan.step_blocks) plan.circuit.extend(blk.gates);
  return plan;
}

CMatrix dense_unitary(const TrotterPlan& plan) {
  return sim::circuit_unitary(plan.circuit);
}

int choose_trotter_steps(int d, int order, double c_est, double delta) {
  if (d <= 0 || c_est < 0.0 || delta <= 0.0)
    throw std::invalid_argument("choose_trotter_steps: positive arguments");
  const double raw = std::pow(d * c_est / delta, 1.0 / order);
  return std::max(1, static_cast<int>(std::ceil(raw - 1e-12)));
}

double estimate_trotter_constant(const pauli::PauliSumHamiltonian& h,
                                 int order, int r_probe) {
  const TrotterPlan plan = trotter_evolution(h, 1.0, order, r_probe);
  const CMatrix u_hs = dense_unitary(plan);
  const CMatrix u = hermitian_exp(pauli::dense(h), 1.0);
  CMatrix diff = u_hs;
  diff -= u;
  return operator_norm(diff) * std::pow(r_probe, order);
}

}  // namespace qetulab::trotter
