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

#include <doctest.h>

#include <cmath>

#include "qetulab/trotter.hpp"

using namespace qetulab;
using namespace qetulab::trotter;

namespace {

double plan_error(const pauli::PauliSumHamiltonian& h, double tau, int order,
                  int steps) {
  const TrotterPlan plan = trotter_evolution(h, tau, order, steps);
  CMatrix diff = dense_unitary(plan);
  diff -= hermitian_exp(pauli::dense(h), tau);
  return operator_norm(diff);
}

}  // namespace

TEST_CASE("pauli_exponential: single Z rotation is diagonal") {
  pauli::PauliString z = pauli::PauliString::from_word("Z");
  auto c = pauli_exponential(z, 0.4, 1);
  CMatrix u = sim::circuit_unitary(c);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.4)) <= 1e-15);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, 0.4)) <= 1e-15);
}

TEST_CASE("pauli_exponential matches the dense exponential oracle") {
  Rng rng(2);
  for (const char* w : {"XX", "YZ", "ZIZ", "XYZ", "YXIY"}) {
    pauli::PauliString p = pauli::PauliString::from_word(w);
    const double theta = rng.uniform(-1.0, 1.0);
    for (bool fuse : {true, false}) {
      auto c = pauli_exponential(p, theta, static_cast<int>(p.n()), fuse);
      CMatrix u = sim::circuit_unitary(c);
      CMatrix ref = hermitian_exp(pauli::dense(p), theta);
      u -= ref;
      CHECK(max_abs(u) <= 1e-12);
    }
  }
}

TEST_CASE("pauli_exponential gate accounting") {
  pauli::PauliString zz = pauli::PauliString::from_word("ZZ");
  auto fused = pauli_exponential(zz, 0.3, 2, true);
  auto cnt = fused.counts();
  CHECK(cnt.n_g1 == 0);
  CHECK(cnt.n_g2 == 1);

  auto ladder = pauli_exponential(zz, 0.3, 2, false);
  auto lc = ladder.counts();
  CHECK(lc.n_g2 == 2);  // CX up and back
  CHECK(lc.n_g1 == 1);  // the Rz

  pauli::PauliString id = pauli::PauliString::from_word("II");
  auto ph = pauli_exponential(id, 0.9, 2);
  CHECK(ph.counts().n_g1 == 0);
  CHECK(ph.counts().n_g2 == 0);
  CMatrix u = sim::circuit_unitary(ph);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.9)) <= 1e-15);
}

TEST_CASE("commuting terms are exact at a single step") {
  pauli::PauliSumHamiltonian h;
  h.n = 3;
  pauli::TermGroup g;
  g.terms.push_back(pauli::PauliString::from_word("ZZI", -1.0));
  g.terms.push_back(pauli::PauliString::from_word("IZZ", -0.7));
  g.terms.push_back(pauli::PauliString::from_word("ZIZ", 0.4));
  h.groups.push_back(g);
  CHECK(plan_error(h, 1.3, 1, 1) <= 1e-12);
}

TEST_CASE("first- and second-order error scaling on TFIM(3,4)") {
  auto h = pauli::build_tfim(3, 4.0);
  const double e8 = plan_error(h, 1.0, 1, 8);
  const double e16 = plan_error(h, 1.0, 1, 16);
  CHECK(e8 / e16 == doctest::Approx(2.0).epsilon(0.2));

  const double s8 = plan_error(h, 1.0, 2, 8);
  const double s16 = plan_error(h, 1.0, 2, 16);
  CHECK(s8 / s16 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("plans compose to identity under time reversal") {
  auto h = pauli::build_heisenberg(3, 1.0, 0.8, 0.5);
  for (int order : {1, 2}) {
    auto fwd = trotter_evolution(h, 0.7, order, 3);
    auto bwd = trotter_evolution(h, -0.7, order, 3);
    CMatrix u = matmul(dense_unitary(bwd), dense_unitary(fwd));
    u -= CMatrix::identity(u.rows());
    CHECK(max_abs(u) <= 1e-12);
  }
}

TEST_CASE("second-order step is palindromic at the gate level") {
  auto h = pauli::build_heisenberg(3, 1.0, 0.8, 0.5);
  auto plan = trotter_evolution(h, 0.9, 2, 2);
  // palindromic flat circuit: reversing the gate list leaves the unitary alone
  sim::Circuit rev;
  rev.nq = plan.circuit.nq;
  for (auto it = plan.circuit.gates.rbegin(); it != plan.circuit.gates.rend(); ++it)
    rev.append(*it);
  CMatrix a = sim::circuit_unitary(plan.circuit);
  a -= sim::circuit_unitary(rev);
  CHECK(max_abs(a) <= 1e-12);
}

TEST_CASE("choose_trotter_steps arithmetic and end-to-end budget") {
  CHECK(choose_trotter_steps(10, 1, 0.001, 1.0) == 1);  // clamp
  CHECK(choose_trotter_steps(10, 1, 0.5, 0.1) == 50);

  auto h = pauli::build_tfim(3, 4.0);
  const int d = 4;
  const double delta = 1e-3;
  for (int order : {1, 2}) {
    const double c_est = estimate_trotter_constant(h, order);
    const int r = choose_trotter_steps(d, order, c_est, delta);
    auto plan = trotter_evolution(h, 1.0, order, r);
    CMatrix u_hs = dense_unitary(plan);
    CMatrix u = hermitian_exp(pauli::dense(h), 1.0);
    // || U_HS^d - U^d ||
    CMatrix phs = CMatrix::identity(8), p = CMatrix::identity(8);
    for (int k = 0; k < d; ++k) {
      phs = matmul(phs, u_hs);
      p = matmul(p, u);
    }
    phs -= p;
    CHECK(operator_norm(phs) <= delta * 1.05);
  }
}
