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

#include "qetulab/pauli.hpp"
#include "qetulab/spectral.hpp"

using namespace qetulab;
using namespace qetulab::pauli;

namespace {

// independent oracle: anti-commutation via dense {A,B}
bool dense_anti_commutes(const PauliString& a, const PauliString& b) {
  CMatrix ma = dense(a), mb = dense(b);
  CMatrix s = matmul(ma, mb);
  s += matmul(mb, ma);
  return max_abs(s) <= 1e-12;
}

}  // namespace

TEST_CASE("pauli string dense realization is Hermitian unitary involution") {
  for (const char* w : {"X", "YZ", "XYZ", "IZYX"}) {
    PauliString p = PauliString::from_word(w);
    CMatrix m = dense(p);
    CMatrix herm = m;
    herm -= m.adjoint();
    CHECK(max_abs(herm) == 0.0);
    CMatrix sq = matmul(m, m);
    sq -= CMatrix::identity(m.rows());
    CHECK(max_abs(sq) <= 1e-15);
  }
}

TEST_CASE("anti_commutes agrees with the dense oracle exhaustively, n <= 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t a = 0; a < total; ++a) {
      for (std::size_t b = 0; b < total; ++b) {
        PauliString pa, pb;
        for (std::size_t q = 0; q < n; ++q) {
          pa.ops.push_back(static_cast<Op>((a >> (2 * q)) & 3));
          pb.ops.push_back(static_cast<Op>((b >> (2 * q)) & 3));
        }
        CHECK(anti_commutes(pa, pb) == dense_anti_commutes(pa, pb));
      }
    }
  }
}

TEST_CASE("anti_commutes spot examples") {
  CHECK(anti_commutes(PauliString::from_word("X"), PauliString::from_word("Z")));
  CHECK_FALSE(
      anti_commutes(PauliString::from_word("XX"), PauliString::from_word("ZZ")));
  CHECK(anti_commutes(PauliString::from_word("YZ"), PauliString::from_word("ZZ")));
  CHECK_THROWS_AS(
      anti_commutes(PauliString::from_word("X"), PauliString::from_word("XX")),
      std::invalid_argument);
}

TEST_CASE("tfim builder: terms, partner, spectrum") {
  auto h = build_tfim(2, 4.0);
  REQUIRE(h.groups.size() == 1);
  CHECK(h.groups[0].terms.size() == 3);  // -Z1Z2, -4X1, -4X2
  REQUIRE(h.groups[0].partner.has_value());
  CHECK(h.groups[0].partner->word() == "YZ");
  CHECK(h.max_anticommutator_norm() <= 1e-12);

  auto spec = spectral::exact_diagonalize(h);
  const double s65 = std::sqrt(65.0);
  CHECK(spec.eigenvalues[0] == doctest::Approx(-s65).epsilon(1e-12));
  CHECK(spec.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[3] == doctest::Approx(s65).epsilon(1e-12));

  // ground overlap with |00> matches the reported system parameter
  CHECK(std::abs(spec.eigenvectors(0, 0)) == doctest::Approx(0.5301).epsilon(5e-4));

  CHECK_THROWS_AS(build_tfim(1, 4.0), std::invalid_argument);
}

TEST_CASE("tfim classical limit g -> 0: ground state is Z-aligned") {
  auto h = build_tfim(3, 1e-9);
  CHECK(h.max_anticommutator_norm() <= 1e-12);
  auto spec = spectral::exact_diagonalize(h);
  // |000> and |111> are degenerate ground states of -sum ZZ
  const double w = std::norm(spec.eigenvectors(0, 0)) +
                   std::norm(spec.eigenvectors(7, 0)) +
                   std::norm(spec.eigenvectors(0, 1)) +
                   std::norm(spec.eigenvectors(7, 1));
  CHECK(w == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("heisenberg builder: groups, partners, spectrum") {
  auto h = build_heisenberg(2, 1.0, 1.0, 1.0);
  REQUIRE(h.groups.size() == 2);
  CHECK(h.groups[0].terms.size() == 2);  // -XX, -YY
  CHECK(h.groups[1].terms.size() == 1);  // -ZZ
  CHECK(h.max_anticommutator_norm() <= 1e-12);

  // dense oracle: spectrum of -(XX + YY + ZZ) is {-1, -1, -1, 3}
  auto spec = spectral::exact_diagonalize(h);
  CHECK(spec.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[2] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[3] == doctest::Approx(3.0).epsilon(1e-12));

  // K1 anti-commutes with the XX term
  CHECK(anti_commutes(*h.groups[0].partner, h.groups[0].terms[0]));
}

TEST_CASE("heisenberg degenerate couplings leave a group empty") {
  auto h = build_heisenberg(4, 1.0, 0.0, 0.0);
  CHECK(h.groups[0].terms.size() == 3);
  CHECK(h.groups[1].terms.empty());
  CHECK(h.max_anticommutator_norm() <= 1e-12);
}

TEST_CASE("fermi-hubbard JW builder") {
  SUBCASE("single site: hopping group empty, K1 anti-commutes with Z terms") {
    auto h = build_fermi_hubbard_jw(1, 1.0, 1.0, 1.0);
    CHECK(h.n == 2);
    CHECK(h.groups[2].terms.empty());
    CHECK(h.groups[0].partner->word() == "XX");
    for (const auto& t : h.groups[0].terms)
      CHECK(anti_commutes(*h.groups[0].partner, t));
    CHECK(h.max_anticommutator_norm() <= 1e-12);
  }
  SUBCASE("two sites: dense 16x16 anti-commutation, K3 pattern") {
    auto h = build_fermi_hubbard_jw(2, 1.0, 1.0, 1.0);
    CHECK(h.n == 4);
    CHECK(h.max_anticommutator_norm() <= 1e-12);
    // chain-major layout: K3 = Z on (site 2, both channels)
    CHECK(h.groups[2].partner->word() == "IZIZ");
    CHECK(h.groups[1].partner->word() == "XXII");
    CHECK(h.groups[0].partner->word() == "XXXX");
  }
}

TEST_CASE("random spectrum: hermiticity, determinism, reconstruction") {
  auto a = spectral::build_random_spectrum(24, 0.25 * M_PI, 0.75 * M_PI, 7);
  CMatrix h = a.h;
  h -= a.h.adjoint();
  CHECK(max_abs(h) <= 1e-12);

  auto b = spectral::build_random_spectrum(24, 0.25 * M_PI, 0.75 * M_PI, 7);
  for (std::size_t i = 0; i < a.spec.eigenvalues.size(); ++i)
    CHECK(a.spec.eigenvalues[i] == b.spec.eigenvalues[i]);

  auto c = spectral::build_random_spectrum(4, 0.3, 2.8, 11);
  auto re = spectral::exact_diagonalize(c.h);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(re.eigenvalues[i] ==
          doctest::Approx(c.spec.eigenvalues[i]).epsilon(1e-12));

  CHECK_THROWS_AS(spectral::build_random_spectrum(8, 2.0, 1.0, 1),
                  std::invalid_argument);
}

TEST_CASE("exact_diagonalize: zero Hamiltonian and dim cap") {
  PauliSumHamiltonian h;
  h.n = 2;
  TermGroup g;
  PauliString z = PauliString::from_word("ZI", 0.0);
  g.terms.push_back(z);
  h.groups.push_back(g);
  auto spec = spectral::exact_diagonalize(h);
  for (double v : spec.eigenvalues) CHECK(std::abs(v) <= 1e-15);

  CHECK_THROWS_AS(spectral::exact_diagonalize(build_tfim(3, 1.0), 4),
                  std::runtime_error);
}

TEST_CASE("affine shift: paper row n=2 and a two-point check") {
  auto spec = spectral::exact_diagonalize(build_tfim(2, 4.0));
  auto sh = spectral::affine_shift(spec, 0.1);
  CHECK(sh.c1 == doctest::Approx(0.1824).epsilon(3e-4));
  CHECK(sh.c2 == doctest::Approx(1.5708).epsilon(2e-5));
  CHECK(sh.mu == doctest::Approx(0.7442).epsilon(2e-4));
  CHECK(sh.delta == doctest::Approx(1.2884).epsilon(2e-4));
  CHECK(sh.sigma_plus == doctest::Approx(0.9988).epsilon(2e-4));
  CHECK(sh.sigma_minus == doctest::Approx(0.7686).epsilon(2e-4));
  // exact endpoints
  CHECK(sh.apply(spec.lambda0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(sh.apply(spec.lambda_max) == doctest::Approx(M_PI - 0.1).epsilon(1e-12));

  spectral::SpectralData two;
  two.eigenvalues = {0.0, 1.0};
  two.lambda0 = 0.0;
  two.lambda1 = 1.0;
  two.lambda_max = 1.0;
  auto sh2 = spectral::affine_shift(two, M_PI / 4);
  CHECK(sh2.c1 == doctest::Approx(M_PI / 2).epsilon(1e-14));
  CHECK(sh2.c2 == doctest::Approx(M_PI / 4).epsilon(1e-14));

  spectral::SpectralData degenerate;
  degenerate.eigenvalues = {1.0, 1.0};
  degenerate.lambda0 = 1.0;
  degenerate.lambda1 = 1.0;
  degenerate.lambda_max = 1.0;
  CHECK_THROWS_AS(spectral::affine_shift(degenerate, 0.1),
                  std::invalid_argument);
}

TEST_CASE("affine shift maps the whole spectrum affinely") {
  auto spec = spectral::exact_diagonalize(build_tfim(4, 4.0));
  auto sh = spectral::affine_shift(spec, 0.1);
  double lo = 1e9, hi = -1e9;
  for (double e : spec.eigenvalues) {
    const double s = sh.apply(e);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(lo == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(hi == doctest::Approx(M_PI - 0.1).epsilon(1e-12));
}

TEST_CASE("hamiltonian text serialization round trip") {
  auto h = build_heisenberg(3, 0.7, 0.3, 1.1);
  auto h2 = from_text(to_text(h));
  CHECK(h2.n == h.n);
  REQUIRE(h2.groups.size() == h.groups.size());
  for (std::size_t g = 0; g < h.groups.size(); ++g) {
    REQUIRE(h2.groups[g].terms.size() == h.groups[g].terms.size());
    for (std::size_t t = 0; t < h.groups[g].terms.size(); ++t) {
      CHECK(h2.groups[g].terms[t].word() == h.groups[g].terms[t].word());
      CHECK(h2.groups[g].terms[t].coeff ==
            doctest::Approx(h.groups[g].terms[t].coeff).epsilon(1e-15));
    }
    CHECK(h2.groups[g].partner->word() == h.groups[g].partner->word());
  }
  CMatrix d = dense(h);
  d -= dense(h2);
  CHECK(max_abs(d) <= 1e-14);
}
