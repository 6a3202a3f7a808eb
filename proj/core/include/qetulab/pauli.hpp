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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qetulab/linalg.hpp"

namespace qetulab::pauli {

enum class Op : unsigned char { I, X, Y, Z };

char to_char(Op op);
Op op_from_char(char c);

// Weighted Pauli word on n qubits. Qubit 1 is the most significant bit of the
// computational-basis index; dense realization is the iterated Kronecker
// product in qubit order.
struct PauliString {
  std::vector<Op> ops;
  double coeff = 1.0;

  std::size_t n() const { return ops.size(); }
  std::size_t weight() const;  // number of non-identity letters
  std::string word() const;

  static PauliString from_word(const std::string& word, double coeff = 1.0);
};

// Dense 2^n x 2^n realization, including the coefficient.
CMatrix dense(const PauliString& p);

// True iff a and b anti-commute, decided symbolically: odd number of
// positions where both letters are non-identity and different.
bool anti_commutes(const PauliString& a, const PauliString& b);

// One anti-commuting group of Hamiltonian terms with an optional partner
// string K satisfying K H K = -H for every term.
struct TermGroup {
  std::vector<PauliString> terms;
  std::optional<PauliString> partner;  // coeff 1 by convention
};

struct PauliSumHamiltonian {
  std::size_t n = 0;
  std::vector<TermGroup> groups;
  std::string model;        // tag, e.g. "tfim"
  std::vector<double> params;

  std::size_t dim() const { return std::size_t{1} << n; }
  std::vector<PauliString> all_terms() const;
  // max over groups of ||K H_g + H_g K|| in dense arithmetic
  double max_anticommutator_norm() const;
};

CMatrix dense(const PauliSumHamiltonian& h);

// H = -sum Z_j Z_{j+1} - g sum X_j; a single group with partner
// K = Y Z Y Z ... alternating.
PauliSumHamiltonian build_tfim(std::size_t n, double g);

// H = -Jx sum XX - Jy sum YY - Jz sum ZZ; group 1 holds the XX and YY terms
// with K1 = Z I Z I ..., group 2 the ZZ terms with K2 = X I X I ...
PauliSumHamiltonian build_heisenberg(std::size_t n, double jx, double jy,
                                     double jz);

// Jordan-Wigner qubit form of the 1D Fermi-Hubbard chain on n sites
// (2n qubits, chain-major layout: qubits 1..n are spin channel 0, qubits
// n+1..2n channel 1). Three groups with partners K1 = X^{2n},
// K2 = X^{n} I^{n}, K3 = ZZ on even sites.
PauliSumHamiltonian build_fermi_hubbard_jw(std::size_t sites, double mu,
                                           double u, double t);

// Line-oriented text format: `coeff pauli-word group-id` per term and
// `K group-id pauli-word` per partner.
std::string to_text(const PauliSumHamiltonian& h);
PauliSumHamiltonian from_text(const std::string& text);

}  // namespace qetulab::pauli
