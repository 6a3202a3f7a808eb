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

#include "qetulab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qetulab::sim {

namespace {

// bit position (from LSB) of 1-based qubit q in an nq-qubit register
inline int bitpos(int nq, int q) { return nq - q; }

void check_targets(int nq, const std::vector<int>& targets) {
  for (int q : targets)
    if (q < 1 || q > nq) throw std::out_of_range("gate target out of range");
}

}  // namespace

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case Kind::Dense:
      g.u = u.adjoint();
      break;
    case Kind::ControlledPauli:
    case Kind::Reflection:
    case Kind::ControlledReflection:
      break;  // self-inverse
    case Kind::GlobalPhase:
      g.phase = std::conj(phase);
      break;
  }
  return g;
}

Gate dense_gate(std::vector<int> targets, CMatrix u, std::string label) {
  Gate g;
  g.kind = Gate::Kind::Dense;
  g.targets = std::move(targets);
  g.u = std::move(u);
  g.label = std::move(label);
  return g;
}

Gate x_rotation(int q, double phi) {
  CMatrix u(2, 2);
  u(0, 0) = std::cos(phi);
  u(0, 1) = cplx(0.0, std::sin(phi));
  u(1, 0) = cplx(0.0, std::sin(phi));
  u(1, 1) = std::cos(phi);
  return dense_gate({q}, std::move(u), "Rx*");
}

Gate z_rotation(int q, double phi) {
  CMatrix u(2, 2);
  u(0, 0) = std::polar(1.0, phi);
  u(1, 1) = std::polar(1.0, -phi);
  return dense_gate({q}, std::move(u), "Rz*");
}

Gate hadamard(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix u(2, 2);
  u(0, 0) = s;
  u(0, 1) = s;
  u(1, 0) = s;
  u(1, 1) = -s;
  return dense_gate({q}, std::move(u), "H");
}

Gate pauli_gate(int q, pauli::Op op) {
  pauli::PauliString p;
  p.ops = {op};
  return dense_gate({q}, pauli::dense(p), std::string(1, pauli::to_char(op)));
}

Gate phase_gate_s_dag(int q) {
  CMatrix u(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = cplx(0.0, -1.0);
  return dense_gate({q}, std::move(u), "Sdg");
}

Gate controlled_pauli(int control, const std::vector<pauli::Op>& word) {
  Gate g;
  g.kind = Gate::Kind::ControlledPauli;
  g.control = control;
  g.word = word;
  g.label = "CP";
  return g;
}

Gate reflection_about_zero(std::vector<int> targets) {
  Gate g;
  g.kind = Gate::Kind::Reflection;
  g.targets = std::move(targets);
  g.label = "R0";
  return g;
}

Gate controlled_reflection(int control, std::vector<int> targets) {
  Gate g;
  g.kind = Gate::Kind::ControlledReflection;
  g.control = control;
  g.targets = std::move(targets);
  g.label = "CR0";
  return g;
}

Gate global_phase(cplx phase) {
  Gate g;
  g.kind = Gate::Kind::GlobalPhase;
  g.phase = phase;
  g.counted = false;
  g.label = "phase";
  return g;
}

void Circuit::extend(const Circuit& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit Circuit::inverse() const {
  Circuit inv;
  inv.nq = nq;
  inv.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it)
    inv.gates.push_back(it->inverse());
  return inv;
}

GateCount count_gate(const Gate& g) {
  GateCount c;
  if (!g.counted) return c;
  switch (g.kind) {
    case Gate::Kind::Dense: {
      const std::size_t k = g.targets.size();
      if (k == 1)
        c.n_g1 = 1;
      else if (k == 2)
        c.n_g2 = 1;
      else
        c.n_g2 = 2 * (static_cast<std::int64_t>(k) - 1);
      break;
    }
    case Gate::Kind::ControlledPauli: {
      std::int64_t w = 0;
      for (auto op : g.word)
        if (op != pauli::Op::I) ++w;
      c.n_g2 = w;
      break;
    }
    case Gate::Kind::Reflection:
    case Gate::Kind::ControlledReflection: {
      std::int64_t k = static_cast<std::int64_t>(g.targets.size());
      if (g.kind == Gate::Kind::ControlledReflection) ++k;
      if (k <= 1) {
        c.n_g1 = 1;
      } else {
        c.n_g1 = 2;
        c.n_g2 = 6 * (k - 1);
      }
      break;
    }
    case Gate::Kind::GlobalPhase:
      break;
  }
  return c;
}

GateCount Circuit::counts() const {
  GateCount total;
  for (const auto& g : gates) {
    const GateCount c = count_gate(g);
    total.n_g1 += c.n_g1;
    total.n_g2 += c.n_g2;
  }
  return total;
}

std::string Circuit::dump() const {
  std::ostringstream os;
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::Kind::Dense:
        os << (g.label.empty() ? "dense" : g.label);
        for (int q : g.targets) os << ' ' << q;
        break;
      case Gate::Kind::ControlledPauli: {
        os << "cpauli " << g.control << ' ';
        for (auto op : g.word) os << pauli::to_char(op);
        break;
      }
      case Gate::Kind::Reflection:
        os << "reflect0";
        for (int q : g.targets) os << ' ' << q;
        break;
      case Gate::Kind::ControlledReflection:
        os << "creflect0 " << g.control;
        for (int q : g.targets) os << ' ' << q;
        break;
      case Gate::Kind::GlobalPhase:
        os << "phase " << g.phase.real() << (g.phase.imag() < 0 ? "-" : "+")
           << std::abs(g.phase.imag()) << 'i';
        break;
    }
    os << '\n';
  }
  return os.str();
}

StateVector::StateVector(int nq) : nq_(nq), amp_(std::size_t{1} << nq, 0.0) {
  amp_[0] = 1.0;
}

StateVector::StateVector(int nq, cvector amplitudes)
    : nq_(nq), amp_(std::move(amplitudes)) {
  if (amp_.size() != (std::size_t{1} << nq))
    throw std::invalid_argument("StateVector: bad amplitude count");
}

namespace {

// Apply a dense 2^k unitary on the listed qubits (most significant first).
void apply_dense_statevector(int nq, cvector& amp,
                             const std::vector<int>& targets,
                             const CMatrix& u) {
  const std::size_t k = targets.size();
  const std::size_t sub = std::size_t{1} << k;
  std::vector<std::size_t> masks(k);
  for (std::size_t t = 0; t < k; ++t)
    masks[t] = std::size_t{1} << bitpos(nq, targets[t]);

  std::size_t tmask = 0;
  for (auto m : masks) tmask |= m;
  const std::size_t dim = amp.size();
  std::vector<cplx> in(sub), out(sub);

  for (std::size_t base = 0; base < dim; ++base) {
    if (base & tmask) continue;  // enumerate each coset once
    for (std::size_t s = 0; s < sub; ++s) {
      std::size_t idx = base;
      for (std::size_t t = 0; t < k; ++t)
        if (s & (std::size_t{1} << (k - 1 - t))) idx |= masks[t];
      in[s] = amp[idx];
    }
    for (std::size_t r = 0; r < sub; ++r) {
      cplx acc = 0.0;
      for (std::size_t s = 0; s < sub; ++s) acc += u(r, s) * in[s];
      out[r] = acc;
    }
    for (std::size_t s = 0; s < sub; ++s) {
      std::size_t idx = base;
      for (std::size_t t = 0; t < k; ++t)
        if (s & (std::size_t{1} << (k - 1 - t))) idx |= masks[t];
      amp[idx] = out[s];
    }
  }
}

// Action of a Pauli word on a basis state: P|b> = phase(b) |b xor flip>,
// phase(b) = i^{#Y} (-1)^{popcount(b & z_mask)} with Y positions counted in
// z_mask (from Y|b> = i (-1)^b |1-b>).
struct PauliAction {
  std::size_t flip_mask = 0;
  std::size_t z_mask = 0;
  cplx y_prefactor = 1.0;
};

PauliAction pauli_action(int nq, const std::vector<pauli::Op>& word) {
  PauliAction a;
  int ny = 0;
  for (int q = 1; q <= static_cast<int>(word.size()); ++q) {
    const std::size_t m = std::size_t{1} << bitpos(nq, q);
    switch (word[q - 1]) {
      case pauli::Op::I: break;
      case pauli::Op::X: a.flip_mask |= m; break;
      case pauli::Op::Z: a.z_mask |= m; break;
      case pauli::Op::Y:
        a.flip_mask |= m;
        a.z_mask |= m;
        ++ny;
        break;
    }
  }
  const cplx i_pow[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  a.y_prefactor = i_pow[ny % 4];
  return a;
}

cplx pauli_phase(const PauliAction& a, std::size_t b) {
  const int zpar = __builtin_popcountll(b & a.z_mask) & 1;
  return (zpar ? -1.0 : 1.0) * a.y_prefactor;
}

}  // namespace

void StateVector::apply(const Gate& g) {
  switch (g.kind) {
    case Gate::Kind::Dense:
      check_targets(nq_, g.targets);
      apply_dense_statevector(nq_, amp_, g.targets, g.u);
      break;
    case Gate::Kind::ControlledPauli: {
      check_targets(nq_, {g.control});
      const PauliAction a = pauli_action(nq_, g.word);
      const std::size_t cm = std::size_t{1} << bitpos(nq_, g.control);
      cvector next(amp_.size(), 0.0);
      for (std::size_t b = 0; b < amp_.size(); ++b) {
        if (b & cm) {
          next[b ^ a.flip_mask] += pauli_phase(a, b) * amp_[b];
        } else {
          next[b] += amp_[b];
        }
      }
      amp_ = std::move(next);
      break;
    }
    case Gate::Kind::Reflection: {
      check_targets(nq_, g.targets);
      std::size_t m = 0;
      for (int q : g.targets) m |= std::size_t{1} << bitpos(nq_, q);
      for (std::size_t b = 0; b < amp_.size(); ++b)
        if (b & m) amp_[b] = -amp_[b];
      break;
    }
    case Gate::Kind::ControlledReflection: {
      check_targets(nq_, g.targets);
      std::size_t m = 0;
      for (int q : g.targets) m |= std::size_t{1} << bitpos(nq_, q);
      const std::size_t cm = std::size_t{1} << bitpos(nq_, g.control);
      for (std::size_t b = 0; b < amp_.size(); ++b)
        if ((b & cm) && (b & m)) amp_[b] = -amp_[b];
      break;
    }
    case Gate::Kind::GlobalPhase:
      for (auto& v : amp_) v *= g.phase;
      break;
  }
}

void StateVector::run(const Circuit& c) {
  for (const auto& g : c.gates) apply(g);
}

double StateVector::prob_zero(int qubit) const {
  const std::size_t m = std::size_t{1} << bitpos(nq_, qubit);
  double p = 0.0;
  for (std::size_t b = 0; b < amp_.size(); ++b)
    if (!(b & m)) p += std::norm(amp_[b]);
  return p;
}

double StateVector::project(int qubit, int bit) {
  const std::size_t m = std::size_t{1} << bitpos(nq_, qubit);
  double p = 0.0;
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    const bool is_one = (b & m) != 0;
    if (is_one == (bit == 1)) p += std::norm(amp_[b]);
  }
  if (p <= 0.0) throw std::runtime_error("project: zero-probability branch");
  const double inv = 1.0 / std::sqrt(p);
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    const bool is_one = (b & m) != 0;
    if (is_one == (bit == 1))
      amp_[b] *= inv;
    else
      amp_[b] = 0.0;
  }
  return p;
}

std::vector<double> StateVector::probabilities(
    const std::vector<int>& qubits) const {
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    std::size_t out = 0;
    for (std::size_t t = 0; t < qubits.size(); ++t) {
      const std::size_t m = std::size_t{1} << bitpos(nq_, qubits[t]);
      if (b & m) out |= std::size_t{1} << (qubits.size() - 1 - t);
    }
    p[out] += std::norm(amp_[b]);
  }
  return p;
}

DensityMatrix::DensityMatrix(int nq)
    : nq_(nq), rho_(std::size_t{1} << nq, std::size_t{1} << nq) {
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(const StateVector& psi)
    : nq_(psi.nq()), rho_(psi.dim(), psi.dim()) {
  const auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      rho_(i, j) = a[i] * std::conj(a[j]);
}

void DensityMatrix::apply_unitary(const Gate& g) {
  // rho -> U rho U^dag: run U over columns of rho (as kets), then over the
  // conjugated rows.
  const std::size_t dim = rho_.rows();
  StateVector work(nq_);
  // columns
  for (std::size_t j = 0; j < dim; ++j) {
    cvector col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = rho_(i, j);
    StateVector sv(nq_, std::move(col));
    sv.apply(g);
    for (std::size_t i = 0; i < dim; ++i) rho_(i, j) = sv.amplitudes()[i];
  }
  // rows: (U rho U^dag)_{i,:} -> apply conj(U) to row vectors
  for (std::size_t i = 0; i < dim; ++i) {
    cvector row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = std::conj(rho_(i, j));
    StateVector sv(nq_, std::move(row));
    sv.apply(g);
    for (std::size_t j = 0; j < dim; ++j)
      rho_(i, j) = std::conj(sv.amplitudes()[j]);
  }
}

void DensityMatrix::depolarize_one(int qubit, double lambda) {
  if (lambda <= 0.0) return;
  const std::size_t m = std::size_t{1} << bitpos(nq_, qubit);
  const std::size_t dim = rho_.rows();
  // sigma = tr_q rho, re-embedded as I/2 (x) sigma on the qubit slot
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & m) != (j & m)) {
        rho_(i, j) *= (1.0 - lambda);
      }
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & m) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & m) continue;
      const cplx avg = 0.5 * (rho_(i, j) + rho_(i | m, j | m));
      rho_(i, j) = (1.0 - lambda) * rho_(i, j) + lambda * avg;
      rho_(i | m, j | m) = (1.0 - lambda) * rho_(i | m, j | m) + lambda * avg;
    }
  }
}

void DensityMatrix::depolarize_two(int q1, int q2, double lambda) {
  if (lambda <= 0.0) return;
  const std::size_t m1 = std::size_t{1} << bitpos(nq_, q1);
  const std::size_t m2 = std::size_t{1} << bitpos(nq_, q2);
  const std::size_t mm = m1 | m2;
  const std::size_t dim = rho_.rows();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if ((i & mm) != (j & mm)) rho_(i, j) *= (1.0 - lambda);
  const std::size_t offs[4] = {0, m2, m1, mm};
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mm) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & mm) continue;
      cplx avg = 0.0;
      for (auto o : offs) avg += rho_(i | o, j | o);
      avg *= 0.25;
      for (auto o : offs)
        rho_(i | o, j | o) = (1.0 - lambda) * rho_(i | o, j | o) + lambda * avg;
    }
  }
}

void DensityMatrix::apply_noise_for(const Gate& g) {
  if (noise_.r_dplz <= 0.0 || !g.counted) return;
  switch (g.kind) {
    case Gate::Kind::Dense:
      if (g.targets.size() == 1) {
        depolarize_one(g.targets[0], noise_.one_qubit_rate());
      } else if (g.targets.size() == 2) {
        depolarize_two(g.targets[0], g.targets[1], noise_.two_qubit_rate());
      } else {
        for (std::size_t t = 0; t + 1 < g.targets.size(); ++t)
          depolarize_two(g.targets[t], g.targets[t + 1],
                         noise_.two_qubit_rate());
      }
      break;
    case Gate::Kind::ControlledPauli:
      for (int q = 1; q <= static_cast<int>(g.word.size()); ++q)
        if (g.word[q - 1] != pauli::Op::I)
          depolarize_two(g.control, q, noise_.two_qubit_rate());
      break;
    case Gate::Kind::Reflection:
    case Gate::Kind::ControlledReflection: {
      // noise matching the counting convention: one 2q channel per counted gate
      const GateCount c = count_gate(g);
      for (std::int64_t i = 0; i < c.n_g2; ++i)
        depolarize_two(g.targets[i % g.targets.size()],
                       g.kind == Gate::Kind::ControlledReflection
                           ? g.control
                           : g.targets[(i + 1) % g.targets.size()],
                       noise_.two_qubit_rate());
      break;
    }
    case Gate::Kind::GlobalPhase:
      break;
  }
}

void DensityMatrix::apply(const Gate& g) {
  apply_unitary(g);
  apply_noise_for(g);
}

void DensityMatrix::run(const Circuit& c) {
  for (const auto& g : c.gates) apply(g);
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < rho_.rows(); ++i) t += rho_(i, i).real();
  return t;
}

std::vector<double> DensityMatrix::probabilities(
    const std::vector<int>& qubits) const {
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t b = 0; b < rho_.rows(); ++b) {
    std::size_t out = 0;
    for (std::size_t t = 0; t < qubits.size(); ++t) {
      const std::size_t m = std::size_t{1} << bitpos(nq_, qubits[t]);
      if (b & m) out |= std::size_t{1} << (qubits.size() - 1 - t);
    }
    p[out] += rho_(b, b).real();
  }
  return p;
}

Histogram sample_bitstrings(const std::vector<double>& probabilities,
                            const std::vector<int>& qubits,
                            std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_bitstrings: shots >= 1");
  // CDF + binary search per draw; deterministic under the seed.
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += std::max(0.0, probabilities[i]);
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw std::invalid_argument("sample_bitstrings: empty distribution");

  Rng rng(seed);
  std::vector<std::int64_t> hits(probabilities.size(), 0);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    hits[std::min<std::size_t>(it - cdf.begin(), hits.size() - 1)]++;
  }
  Histogram h;
  h.qubits = qubits;
  h.shots = shots;
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i] > 0) h.counts.emplace_back(i, hits[i]);
  return h;
}

std::string Histogram::to_csv() const {
  std::ostringstream os;
  os << "bitstring,count\n";
  for (const auto& [bits, cnt] : counts) {
    for (std::size_t t = 0; t < qubits.size(); ++t)
      os << ((bits >> (qubits.size() - 1 - t)) & 1);
    os << ',' << cnt << '\n';
  }
  return os.str();
}

CMatrix exact_evolution(const CMatrix& h, double tau, std::size_t dim_cap) {
  if (h.rows() > dim_cap)
    throw std::runtime_error("exact_evolution: dimension exceeds cap");
  return hermitian_exp(h, tau);
}

GateCount tfim_gate_counts(int n, int d, int r) {
  if (n < 0 || d < 0 || r < 0)
    throw std::invalid_argument("tfim_gate_counts: nonnegative args");
  GateCount c;
  c.n_g1 = static_cast<std::int64_t>(d) * (static_cast<std::int64_t>(n) * r + 1) + 1;
  c.n_g2 = static_cast<std::int64_t>(d) *
           (static_cast<std::int64_t>(n - 1) * r + 2 * static_cast<std::int64_t>(n));
  return c;
}

double alpha_dem(const GateCount& counts, double r_dplz) {
  return std::pow(1.0 - r_dplz / 10.0, static_cast<double>(counts.n_g1)) *
         std::pow(1.0 - r_dplz, static_cast<double>(counts.n_g2));
}

CMatrix circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.nq;
  CMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    cvector e(dim, 0.0);
    e[col] = 1.0;
    StateVector sv(c.nq, std::move(e));
    sv.run(c);
    for (std::size_t i = 0; i < dim; ++i) u(i, col) = sv.amplitudes()[i];
  }
  return u;
}

}  // namespace qetulab::sim
