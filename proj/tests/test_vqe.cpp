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

#include "qetulab/spectral.hpp"
#include "qetulab/vqe.hpp"

using namespace qetulab;
using namespace qetulab::vqe;

namespace {

// measurement distributions of a state after each group rotation
std::vector<std::vector<double>> group_probs(
    const std::vector<MeasurementGroup>& groups, const cvector& psi, int n) {
  std::vector<std::vector<double>> probs;
  for (const auto& g : groups) {
    sim::StateVector sv(n, psi);
    sv.run(rotation_circuit(g.rotation, n));
    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q + 1;
    probs.push_back(sv.probabilities(all));
  }
  return probs;
}

}  // namespace

TEST_CASE("rotations diagonalize their groups (dense check, n <= 3)") {
  for (const auto& ham :
       {pauli::build_tfim(3, 4.0), pauli::build_heisenberg(3, 1.0, 0.8, 0.6)}) {
    auto groups = make_measurement_groups(ham);
    // V_k (sum of group terms) V_k^dag must be diagonal
    std::size_t gi = 0;
    for (const auto& g : groups) {
      sim::Circuit rot = rotation_circuit(g.rotation, static_cast<int>(ham.n));
      CMatrix v = sim::circuit_unitary(rot);
      // rebuild the group's Hamiltonian from the masks is lossy; instead
      // conjugate the full letter-class terms directly
      CMatrix hg(ham.dim(), ham.dim());
      for (const auto& term : ham.all_terms()) {
        bool z_only = true, x_only = true, y_only = true;
        for (auto op : term.ops) {
          if (op == pauli::Op::I) continue;
          z_only &= op == pauli::Op::Z;
          x_only &= op == pauli::Op::X;
          y_only &= op == pauli::Op::Y;
        }
        const bool in_group =
            (g.rotation == BasisRotation::Identity && z_only) ||
            (g.rotation == BasisRotation::Hadamard && x_only) ||
            (g.rotation == BasisRotation::HadamardSdag && y_only);
        if (in_group) hg += pauli::dense(term);
      }
      CMatrix conj = matmul(v, matmul(hg, v.adjoint()));
      for (std::size_t i = 0; i < conj.rows(); ++i)
        for (std::size_t j = 0; j < conj.cols(); ++j)
          if (i != j) CHECK(std::abs(conj(i, j)) <= 1e-12);
      ++gi;
    }
  }
}

TEST_CASE("mixed-letter terms are rejected") {
  pauli::PauliSumHamiltonian h;
  h.n = 2;
  pauli::TermGroup g;
  g.terms.push_back(pauli::PauliString::from_word("XY", 1.0));
  h.groups.push_back(g);
  CHECK_THROWS_AS(make_measurement_groups(h), std::runtime_error);
}

TEST_CASE("|00> expectation of the TFIM Hamiltonian") {
  // counts_z: every shot reads 00; counts_x: uniform
  sim::Histogram cz;
  cz.qubits = {1, 2};
  cz.shots = 1000;
  cz.counts = {{0, 1000}};
  sim::Histogram cx;
  cx.qubits = {1, 2};
  cx.shots = 1000;
  cx.counts = {{0, 250}, {1, 250}, {2, 250}, {3, 250}};
  const double e = tfim_energy_from_counts(cz, cx, 4.0, 2);
  CHECK(e == doctest::Approx(-1.0).epsilon(1e-12));

  sim::Histogram empty;
  empty.shots = 0;
  CHECK_THROWS_AS(tfim_energy_from_counts(empty, cx, 4.0, 2),
                  std::invalid_argument);
}

TEST_CASE("exact-marginal identity: grouped energy equals <psi|H|psi>") {
  for (const auto& ham :
       {pauli::build_tfim(2, 4.0), pauli::build_tfim(4, 4.0),
        pauli::build_heisenberg(2, 1.0, 0.8, 0.6),
        pauli::build_heisenberg(3, 1.0, 1.0, 1.0),
        pauli::build_fermi_hubbard_jw(2, 1.0, 1.0, 1.0)}) {
    auto spec = spectral::exact_diagonalize(ham);
    const cvector psi = spec.eigenvector(0);
    auto groups = make_measurement_groups(ham);
    auto probs = group_probs(groups, psi, static_cast<int>(ham.n));
    const double e = grouped_energy_exact(groups, probs);
    CHECK(e == doctest::Approx(spec.lambda0).epsilon(1e-10));
  }
}

TEST_CASE("shot-based TFIM energy lands within statistical error") {
  auto ham = pauli::build_tfim(2, 4.0);
  auto spec = spectral::exact_diagonalize(ham);
  const cvector psi = spec.eigenvector(0);
  auto groups = make_measurement_groups(ham);
  auto probs = group_probs(groups, psi, 2);
  REQUIRE(groups.size() == 2);

  const std::int64_t shots = 100000;
  auto hz = sim::sample_bitstrings(probs[0], {1, 2}, shots, 91);
  auto hx = sim::sample_bitstrings(probs[1], {1, 2}, shots, 92);
  const double e_group = grouped_energy(groups, {hz, hx});
  const double e_tfim = tfim_energy_from_counts(
      groups[0].rotation == BasisRotation::Identity ? hz : hx,
      groups[0].rotation == BasisRotation::Identity ? hx : hz, 4.0, 2);
  CHECK(e_group == doctest::Approx(e_tfim).epsilon(1e-12));

  // multinomial error propagation: sigma ~ 1e-2 at 1e5 shots
  CHECK(std::abs(e_group - spec.lambda0) <= 4.0 * 2e-2);
}

TEST_CASE("csv round trip and the error-propagated estimate") {
  auto ham = pauli::build_tfim(2, 4.0);
  auto spec = spectral::exact_diagonalize(ham);
  const cvector psi = spec.eigenvector(0);
  auto groups = make_measurement_groups(ham);
  auto probs = group_probs(groups, psi, 2);
  auto hz = sim::sample_bitstrings(probs[0], {1, 2}, 100000, 3);
  auto hx = sim::sample_bitstrings(probs[1], {1, 2}, 100000, 4);

  // histogram csv round trip
  auto hz2 = parse_histogram_csv(hz.to_csv());
  CHECK(hz2.shots == hz.shots);
  CHECK(hz2.counts == hz.counts);
  CHECK_THROWS_AS(parse_histogram_csv("bitstring,count\n"),
                  std::invalid_argument);

  auto est = grouped_energy_with_error(groups, {hz, hx});
  CHECK(est.energy == doctest::Approx(grouped_energy(groups, {hz, hx}))
                          .epsilon(1e-12));
  // the true error is consistent with the propagated standard error
  CHECK(std::abs(est.energy - spec.lambda0) <= 5.0 * est.stderr_);
  CHECK(est.stderr_ > 0.0);
  CHECK(est.stderr_ < 0.1);
  CHECK(est.to_json().find("energy") != std::string::npos);
}

TEST_CASE("estimator standard deviation scales like shots^{-1/2}") {
  auto ham = pauli::build_tfim(2, 4.0);
  auto spec = spectral::exact_diagonalize(ham);
  const cvector psi = spec.eigenvector(0);
  auto groups = make_measurement_groups(ham);
  auto probs = group_probs(groups, psi, 2);

  std::vector<double> stds;
  std::vector<double> shot_grid = {1e3, 1e4, 1e5};
  for (double sh : shot_grid) {
    const int reps = 48;
    double mean = 0.0, m2 = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      auto hz = sim::sample_bitstrings(probs[0], {1, 2},
                                        static_cast<std::int64_t>(sh),
                                        10000 + rep);
      auto hx = sim::sample_bitstrings(probs[1], {1, 2},
                                        static_cast<std::int64_t>(sh),
                                        20000 + rep);
      const double e = grouped_energy(groups, {hz, hx});
      const double delta = e - mean;
      mean += delta / (rep + 1);
      m2 += delta * (e - mean);
    }
    stds.push_back(std::sqrt(m2 / (reps - 1)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < stds.size(); ++i) {
    const double x = std::log(shot_grid[i]);
    const double y = std::log(stds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(stds.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));
}
