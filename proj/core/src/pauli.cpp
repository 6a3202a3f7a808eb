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

#include "qetulab/pauli.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qetulab::pauli {

char to_char(Op op) {
  switch (op) {
    case Op::I: return 'I';
    case Op::X: return 'X';
    case Op::Y: return 'Y';
    case Op::Z: return 'Z';
  }
  return '?';
}

Op op_from_char(char c) {
  switch (c) {
    case 'I': return Op::I;
    case 'X': return Op::X;
    case 'Y': return Op::Y;
    case 'Z': return Op::Z;
    default: throw std::invalid_argument(std::string("bad Pauli letter: ") + c);
  }
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (Op op : ops)
    if (op != Op::I) ++w;
  return w;
}

std::string PauliString::word() const {
  std::string s;
  s.reserve(ops.size());
  for (Op op : ops) s.push_back(to_char(op));
  return s;
}

PauliString PauliString::from_word(const std::string& word, double coeff) {
  PauliString p;
  p.coeff = coeff;
  p.ops.reserve(word.size());
  for (char c : word) p.ops.push_back(op_from_char(c));
  return p;
}

namespace {

CMatrix single_op(Op op) {
  CMatrix m(2, 2);
  switch (op) {
    case Op::I: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case Op::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case Op::Y: m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
    case Op::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

}  // namespace

CMatrix dense(const PauliString& p) {
  CMatrix m(1, 1);
  m(0, 0) = p.coeff;
  for (Op op : p.ops) m = kron(m, single_op(op));
  return m;
}

bool anti_commutes(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("anti_commutes: qubit count mismatch");
  std::size_t clashes = 0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    const Op x = a.ops[i], y = b.ops[i];
    if (x != Op::I && y != Op::I && x != y) ++clashes;
  }
  return clashes % 2 == 1;
}

std::vector<PauliString> PauliSumHamiltonian::all_terms() const {
  std::vector<PauliString> out;
  for (const auto& g : groups)
    out.insert(out.end(), g.terms.begin(), g.terms.end());
  return out;
}

double PauliSumHamiltonian::max_anticommutator_norm() const {
  double worst = 0.0;
  for (const auto& g : groups) {
    if (!g.partner || g.terms.empty()) continue;
    CMatrix hg(dim(), dim());
    for (const auto& t : g.terms) hg += dense(t);
    const CMatrix k = dense(*g.partner);
    CMatrix anti = matmul(k, hg);
    anti += matmul(hg, k);
    worst = std::max(worst, frobenius_norm(anti));
  }
  return worst;
}

CMatrix dense(const PauliSumHamiltonian& h) {
  CMatrix m(h.dim(), h.dim());
  for (const auto& g : h.groups)
    for (const auto& t : g.terms) m += dense(t);
  return m;
}

PauliSumHamiltonian build_tfim(std::size_t n, double g) {
  if (n < 2) throw std::invalid_argument("build_tfim: need n >= 2");
  if (!(g > 0.0)) throw std::invalid_argument("build_tfim: need g > 0");
  PauliSumHamiltonian h;
  h.n = n;
  h.model = "tfim";
  h.params = {g};
  TermGroup grp;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    PauliString p;
    p.ops.assign(n, Op::I);
    p.ops[j] = Op::Z;
    p.ops[j + 1] = Op::Z;
    p.coeff = -1.0;
    grp.terms.push_back(std::move(p));
  }
  for (std::size_t j = 0; j < n; ++j) {
    PauliString p;
    p.ops.assign(n, Op::I);
    p.ops[j] = Op::X;
    p.coeff = -g;
    grp.terms.push_back(std::move(p));
  }
  PauliString k;
  k.ops.resize(n);
  for (std::size_t j = 0; j < n; ++j) k.ops[j] = (j % 2 == 0) ? Op::Y : Op::Z;
  grp.partner = std::move(k);
  h.groups.push_back(std::move(grp));
  return h;
}

PauliSumHamiltonian build_heisenberg(std::size_t n, double jx, double jy,
                                     double jz) {
  if (n < 2) throw std::invalid_argument("build_heisenberg: need n >= 2");
  PauliSumHamiltonian h;
  h.n = n;
  h.model = "heisenberg";
  h.params = {jx, jy, jz};

  TermGroup gxy;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (jx != 0.0) {
      PauliString p;
      p.ops.assign(n, Op::I);
      p.ops[j] = Op::X;
      p.ops[j + 1] = Op::X;
      p.coeff = -jx;
      gxy.terms.push_back(std::move(p));
    }
    if (jy != 0.0) {
      PauliString p;
      p.ops.assign(n, Op::I);
      p.ops[j] = Op::Y;
      p.ops[j + 1] = Op::Y;
      p.coeff = -jy;
      gxy.terms.push_back(std::move(p));
    }
  }
  PauliString k1;
  k1.ops.resize(n);
  for (std::size_t j = 0; j < n; ++j) k1.ops[j] = (j % 2 == 0) ? Op::Z : Op::I;
  gxy.partner = std::move(k1);

  TermGroup gz;
  for (std::size_t j = 0; j + 1 < n && jz != 0.0; ++j) {
    PauliString p;
    p.ops.assign(n, Op::I);
    p.ops[j] = Op::Z;
    p.ops[j + 1] = Op::Z;
    p.coeff = -jz;
    gz.terms.push_back(std::move(p));
  }
  PauliString k2;
  k2.ops.resize(n);
  for (std::size_t j = 0; j < n; ++j) k2.ops[j] = (j % 2 == 0) ? Op::X : Op::I;
  gz.partner = std::move(k2);

  h.groups.push_back(std::move(gxy));
  h.groups.push_back(std::move(gz));
  return h;
}

PauliSumHamiltonian build_fermi_hubbard_jw(std::size_t sites, double mu,
                                           double u, double t) {
  if (sites < 1) throw std::invalid_argument("build_fermi_hubbard_jw: need sites >= 1");
  const std::size_t nq = 2 * sites;
  // chain-major layout: qubit index of site j (1-based), channel s
  auto idx = [sites](std::size_t j, std::size_t s) { return s * sites + (j - 1); };

  PauliSumHamiltonian h;
  h.n = nq;
  h.model = "fermi_hubbard_jw";
  h.params = {mu, u, t};

  TermGroup g1;  // single-Z chemical potential terms
  const double cz = 0.5 * (0.5 * u - mu);
  for (std::size_t j = 1; j <= sites; ++j)
    for (std::size_t s = 0; s < 2; ++s) {
      PauliString p;
      p.ops.assign(nq, Op::I);
      p.ops[idx(j, s)] = Op::Z;
      p.coeff = cz;
      g1.terms.push_back(std::move(p));
    }
  PauliString k1;
  k1.ops.assign(nq, Op::X);
  g1.partner = std::move(k1);

  TermGroup g2;  // on-site ZZ repulsion
  for (std::size_t j = 1; j <= sites; ++j) {
    PauliString p;
    p.ops.assign(nq, Op::I);
    p.ops[idx(j, 0)] = Op::Z;
    p.ops[idx(j, 1)] = Op::Z;
    p.coeff = 0.25 * u;
    g2.terms.push_back(std::move(p));
  }
  PauliString k2;
  k2.ops.assign(nq, Op::I);
  for (std::size_t j = 1; j <= sites; ++j) k2.ops[idx(j, 0)] = Op::X;
  g2.partner = std::move(k2);

  TermGroup g3;  // hopping: Sigma+ Sigma- + h.c. = 2(XX + YY) on neighbors
  for (std::size_t j = 1; j + 1 <= sites; ++j)
    for (std::size_t s = 0; s < 2; ++s) {
      for (Op op : {Op::X, Op::Y}) {
        PauliString p;
        p.ops.assign(nq, Op::I);
        p.ops[idx(j, s)] = op;
        p.ops[idx(j + 1, s)] = op;
        p.coeff = -2.0 * t;
        g3.terms.push_back(std::move(p));
      }
    }
  PauliString k3;
  k3.ops.assign(nq, Op::I);
  for (std::size_t j = 2; j <= sites; j += 2) {
    k3.ops[idx(j, 0)] = Op::Z;
    k3.ops[idx(j, 1)] = Op::Z;
  }
  g3.partner = std::move(k3);

  h.groups.push_back(std::move(g1));
  h.groups.push_back(std::move(g2));
  h.groups.push_back(std::move(g3));
  return h;
}

std::string to_text(const PauliSumHamiltonian& h) {
  std::ostringstream os;
  os.precision(17);
  os << "# model " << h.model;
  for (double p : h.params) os << ' ' << p;
  os << '\n';
  for (std::size_t g = 0; g < h.groups.size(); ++g) {
    for (const auto& t : h.groups[g].terms)
      os << t.coeff << ' ' << t.word() << ' ' << g << '\n';
    if (h.groups[g].partner)
      os << "K " << g << ' ' << h.groups[g].partner->word() << '\n';
  }
  return os.str();
}

PauliSumHamiltonian from_text(const std::string& text) {
  PauliSumHamiltonian h;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, kw;
      ls >> hash >> kw;
      if (kw == "model") {
        ls >> h.model;
        double p;
        while (ls >> p) h.params.push_back(p);
      }
      continue;
    }
    if (line[0] == 'K') {
      char k;
      std::size_t gid;
      std::string word;
      ls >> k >> gid >> word;
      if (gid >= h.groups.size()) h.groups.resize(gid + 1);
      h.groups[gid].partner = PauliString::from_word(word);
      h.n = std::max(h.n, word.size());
      continue;
    }
    double coeff;
    std::string word;
    std::size_t gid;
    if (!(ls >> coeff >> word >> gid))
      throw std::invalid_argument("from_text: malformed line: " + line);
    if (gid >= h.groups.size()) h.groups.resize(gid + 1);
    h.groups[gid].terms.push_back(PauliString::from_word(word, coeff));
    h.n = std::max(h.n, word.size());
  }
  for (const auto& g : h.groups) {
    for (const auto& t : g.terms)
      if (t.n() != h.n) throw std::invalid_argument("from_text: inconsistent qubit count");
    if (g.partner && g.partner->n() != h.n)
      throw std::invalid_argument("from_text: inconsistent partner length");
  }
  return h;
}

}  // namespace qetulab::pauli
