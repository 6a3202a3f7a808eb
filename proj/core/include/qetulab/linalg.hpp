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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qetulab {

using cplx = std::complex<double>;
using cvector = std::vector<cplx>;

// Dense column-dim-agnostic complex matrix, row major. Sized for desk-scale
// work (dim <= 4096); no sparse storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::span<cplx> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const {
    return {a_.data() + i * cols_, cols_};
  }

  CMatrix adjoint() const;
  CMatrix transpose() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

  const cplx* data() const { return a_.data(); }
  cplx* data() { return a_.data(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  cvector a_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
cvector matvec(const CMatrix& a, const cvector& x);
CMatrix kron(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
// Spectral norm, via the Hermitian eigensolver on A^dag A.
double operator_norm(const CMatrix& a);

double norm2(const cvector& x);
cplx dot(const cvector& x, const cvector& y);  // <x|y>, conjugates x
void normalize(cvector& x);

// Eigendecomposition of a Hermitian matrix: Householder tridiagonalization
// followed by implicit-shift QL, eigenvalues ascending, eigenvectors as
// columns of `vectors`. Self-contained; ties broken stably by original index.
struct EigResult {
  std::vector<double> values;
  CMatrix vectors;
};
EigResult hermitian_eig(const CMatrix& h);

// exp(-i tau H) for Hermitian H via eigendecomposition.
CMatrix hermitian_exp(const CMatrix& h, double tau);
// F applied to a Hermitian matrix through its spectrum: sum_j F(lambda_j) v v^dag.
CMatrix hermitian_function(const EigResult& eig,
                           const std::vector<double>& f_of_lambda);

// Deterministic RNG wrapper. Gaussian draws use explicit Box-Muller so the
// stream does not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return (gen_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::uint64_t integer(std::uint64_t bound);  // uniform in [0, bound)
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary from a seeded Gaussian ensemble (QR with phase fix).
CMatrix haar_unitary(std::size_t n, Rng& rng);

// Unitary completion: first column is `first_column` (assumed normalized),
// remaining columns complete an orthonormal basis deterministically.
CMatrix unitary_with_first_column(const cvector& first_column);

}  // namespace qetulab
