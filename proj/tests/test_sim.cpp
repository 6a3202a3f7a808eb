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

#include "qetulab/sim.hpp"
#include "qetulab/spectral.hpp"

using namespace qetulab;
using namespace qetulab::sim;

namespace {

Circuit random_circuit(int nq, int gates, Rng& rng) {
  Circuit c;
  c.nq = nq;
  for (int g = 0; g < gates; ++g) {
    const int pick = static_cast<int>(rng.integer(3));
    if (pick == 0) {
      c.append(x_rotation(1 + static_cast<int>(rng.integer(nq)),
                          rng.uniform(-M_PI, M_PI)));
    } else if (pick == 1) {
      c.append(hadamard(1 + static_cast<int>(rng.integer(nq))));
    } else if (nq >= 2) {
      int a = 1 + static_cast<int>(rng.integer(nq));
      int b = 1 + static_cast<int>(rng.integer(nq));
      while (b == a) b = 1 + static_cast<int>(rng.integer(nq));
      pauli::PauliString p;
      p.ops.assign(2, pauli::Op::I);
      p.ops[0] = pauli::Op::X;
      p.ops[1] = pauli::Op::Y;
      CMatrix pm = pauli::dense(p);
      const double th = rng.uniform(0.0, M_PI);
      CMatrix u(4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j)
          u(i, j) = cplx(0.0, -std::sin(th)) * pm(i, j);
        u(i, i) += std::cos(th);
      }
      c.append(dense_gate({a, b}, std::move(u), "expXY"));
    }
  }
  return c;
}

}  // namespace

TEST_CASE("X flips a basis state") {
  StateVector sv(1);
  sv.apply(pauli_gate(1, pauli::Op::X));
  CHECK(std::abs(sv.amplitudes()[1] - 1.0) <= 1e-15);
}

TEST_CASE("controlled Pauli matches the dense controlled unitary") {
  Rng rng(3);
  for (const char* word : {"X", "Y", "ZZ", "YZ", "XYZ"}) {
    pauli::PauliString p = pauli::PauliString::from_word(word);
    const int n = static_cast<int>(p.n());
    const int nq = n + 1;
    // dense reference: |0><0| (x) I + |1><1| (x) P with control = qubit 1
    const std::size_t sys = std::size_t{1} << n;
    CMatrix ref(2 * sys, 2 * sys);
    CMatrix pd = pauli::dense(p);
    for (std::size_t i = 0; i < sys; ++i) {
      ref(i, i) = 1.0;
      for (std::size_t j = 0; j < sys; ++j) ref(sys + i, sys + j) = pd(i, j);
    }
    Circuit c;
    c.nq = nq;
    std::vector<pauli::Op> w(nq, pauli::Op::I);
    for (int q = 0; q < n; ++q) w[q + 1] = p.ops[q];
    c.append(controlled_pauli(1, w));
    CMatrix u = circuit_unitary(c);
    u -= ref;
    CHECK(max_abs(u) <= 1e-14);

    // random-state spot check through the statevector engine
    StateVector sv(nq);
    sv.apply(hadamard(1));
    for (int q = 2; q <= nq; ++q) sv.apply(hadamard(q));
    const double nrm = sv.norm();
    CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("statevector and density-matrix engines agree on random circuits") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int nq = 2 + static_cast<int>(rng.integer(5));  // 2..6
    Circuit c = random_circuit(nq, 12, rng);
    StateVector sv(nq);
    sv.run(c);
    DensityMatrix dm(nq);
    dm.run(c);
    const auto& a = sv.amplitudes();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        worst = std::max(worst,
                         std::abs(dm.rho()(i, j) - a[i] * std::conj(a[j])));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("full-rate depolarizing drives a qubit to the maximally mixed state") {
  DensityMatrix dm(2);
  dm.apply(hadamard(1));  // entangling-free superposition on qubit 1
  dm.depolarize_one(1, 1.0);
  auto p = dm.probabilities({1});
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dm.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("depolarizing channels preserve trace and positivity") {
  Rng rng(23);
  Circuit c = random_circuit(3, 10, rng);
  DensityMatrix dm(3);
  NoiseModel noise{1e-2};
  dm.set_noise(noise);
  dm.run(c);
  CHECK(dm.trace() == doctest::Approx(1.0).epsilon(1e-12));
  auto eig = hermitian_eig(dm.rho());
  for (double v : eig.values) CHECK(v >= -1e-12);
}

TEST_CASE("depolarizing channel is completely positive: Choi matrix PSD") {
  // Choi of the 1q channel: apply the channel to half of a maximally
  // entangled pair.
  for (double lambda : {0.05, 0.3, 1.0}) {
    DensityMatrix dm(2);
    // prepare |phi+> = (|00> + |11>)/sqrt(2)
    StateVector sv(2);
    sv.apply(hadamard(1));
    CMatrix cx(4, 4);
    cx(0, 0) = 1.0;
    cx(1, 1) = 1.0;
    cx(2, 3) = 1.0;
    cx(3, 2) = 1.0;
    sv.apply(dense_gate({1, 2}, cx, "CX"));
    DensityMatrix choi(sv);
    choi.depolarize_one(1, lambda);
    auto eig = hermitian_eig(choi.rho());
    for (double v : eig.values) CHECK(v >= -1e-12);
    double tr = 0.0;
    for (std::size_t i = 0; i < 4; ++i) tr += choi.rho()(i, i).real();
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reflection about zero") {
  StateVector sv(2);
  sv.apply(reflection_about_zero({1, 2}));
  CHECK(sv.amplitudes()[0] == cplx(1.0, 0.0));  // |00> fixed

  StateVector one(1);
  one.apply(pauli_gate(1, pauli::Op::X));
  one.apply(reflection_about_zero({1}));
  CHECK(one.amplitudes()[1] == cplx(-1.0, 0.0));  // |1> negated

  Rng rng(31);
  Circuit prep = random_circuit(3, 8, rng);
  StateVector a(3);
  a.run(prep);
  StateVector b = a;
  b.apply(reflection_about_zero({1, 2, 3}));
  b.apply(reflection_about_zero({1, 2, 3}));
  for (std::size_t i = 0; i < a.dim(); ++i)
    CHECK(std::abs(a.amplitudes()[i] - b.amplitudes()[i]) <= 1e-15);
}

TEST_CASE("sampling: determinism, pure state, binomial sanity, GHZ marginal") {
  // |0>: all shots at zero
  std::vector<double> p0 = {1.0, 0.0};
  auto h = sample_bitstrings(p0, {1}, 1000, 9);
  REQUIRE(h.counts.size() == 1);
  CHECK(h.counts[0].first == 0);
  CHECK(h.counts[0].second == 1000);

  // |+> frequencies within 3 sigma of 1/2 at 1e5 shots
  std::vector<double> pplus = {0.5, 0.5};
  auto hp = sample_bitstrings(pplus, {1}, 100000, 12345);
  const double f0 = static_cast<double>(hp.counts[0].second) / hp.shots;
  CHECK(std::abs(f0 - 0.5) <= 3.0 * std::sqrt(0.25 / 100000));

  auto ha = sample_bitstrings(pplus, {1}, 5000, 777);
  auto hb = sample_bitstrings(pplus, {1}, 5000, 777);
  CHECK(ha.counts == hb.counts);

  // GHZ marginal on one qubit
  StateVector ghz(3);
  ghz.apply(hadamard(1));
  CMatrix cx(4, 4);
  cx(0, 0) = 1.0;
  cx(1, 1) = 1.0;
  cx(2, 3) = 1.0;
  cx(3, 2) = 1.0;
  ghz.apply(dense_gate({1, 2}, cx, "CX"));
  ghz.apply(dense_gate({2, 3}, cx, "CX"));
  auto marg = ghz.probabilities({2});
  CHECK(marg[0] == doctest::Approx(0.5).epsilon(1e-12));
  auto hg = sample_bitstrings(marg, {2}, 100000, 4);
  const double g0 = static_cast<double>(hg.counts[0].second) / hg.shots;
  CHECK(std::abs(g0 - 0.5) <= 3.0 * std::sqrt(0.25 / 100000));
}

TEST_CASE("gate counts and the digital error model") {
  auto c = tfim_gate_counts(2, 10, 3);
  CHECK(c.n_g1 == 71);
  CHECK(c.n_g2 == 70);

  CHECK(alpha_dem(tfim_gate_counts(2, 10, 3), 0.0) == 1.0);

  auto c4 = tfim_gate_counts(4, 20, 3);
  CHECK(c4.n_g1 == 261);
  CHECK(c4.n_g2 == 340);
  CHECK(alpha_dem(c4, 1e-4) == doctest::Approx(0.9639).epsilon(2e-4));
}

TEST_CASE("circuit inverse and histogram csv") {
  Rng rng(41);
  Circuit c = random_circuit(3, 9, rng);
  StateVector sv(3);
  sv.run(c);
  sv.run(c.inverse());
  CHECK(std::abs(sv.amplitudes()[0] - 1.0) <= 1e-12);

  std::vector<double> p = {0.25, 0.75};
  auto h = sample_bitstrings(p, {2}, 100, 5);
  const std::string csv = h.to_csv();
  CHECK(csv.find("bitstring,count") == 0);
}

TEST_CASE("exact evolution: identity, reversal, unitarity") {
  auto h = pauli::build_tfim(2, 4.0);
  CMatrix hd = pauli::dense(h);
  CMatrix u = exact_evolution(hd, 0.8);
  CMatrix w = matmul(u, exact_evolution(hd, -0.8));
  w -= CMatrix::identity(4);
  CHECK(max_abs(w) <= 1e-12);

  // tau = 2 pi / sqrt(65): the ground-sector phases return to the start
  const double tau = 2.0 * M_PI / std::sqrt(65.0);
  CMatrix upi = exact_evolution(hd, tau);
  auto spec = spectral::exact_diagonalize(hd);
  cvector v0 = spec.eigenvector(0);
  cvector w0 = matvec(upi, v0);
  CHECK(std::abs(std::abs(dot(v0, w0)) - 1.0) <= 1e-12);

  CMatrix zero(2, 2);
  CMatrix uz = exact_evolution(zero, 1.3);
  uz -= CMatrix::identity(2);
  CHECK(max_abs(uz) <= 1e-14);
}
