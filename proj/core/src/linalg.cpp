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

#include "qetulab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qetulab {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  CMatrix c(a.rows(), b.cols());
  const std::size_t n = a.rows(), m = b.cols(), k = a.cols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a(i, p);
      if (aip == cplx(0.0, 0.0)) continue;
      const cplx* brow = &b(p, 0);
      cplx* crow = &c(i, 0);
      for (std::size_t j = 0; j < m; ++j) crow[j] += aip * brow[j];
    }
  }
  return c;
}

cvector matvec(const CMatrix& a, const cvector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
  cvector y(a.rows(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    const cplx* row = &a(i, 0);
    for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return c;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j)));
  return m;
}

double operator_norm(const CMatrix& a) {
  const CMatrix g = matmul(a.adjoint(), a);
  const EigResult eig = hermitian_eig(g);
  double top = eig.values.empty() ? 0.0 : eig.values.back();
  return std::sqrt(std::max(0.0, top));
}

double norm2(const cvector& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

cplx dot(const cvector& x, const cvector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

void normalize(cvector& x) {
  const double n = norm2(x);
  if (n == 0.0) throw std::invalid_argument("normalize: zero vector");
  for (auto& v : x) v /= n;
}

namespace {

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form, accumulating the unitary transformation in q.
void tridiagonalize(CMatrix a, std::vector<double>& diag,
                    std::vector<double>& off, CMatrix& q) {
  const std::size_t n = a.rows();
  q = CMatrix::identity(n);
  diag.assign(n, 0.0);
  off.assign(n, 0.0);

  cvector v(n), w(n);
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    // Column below the diagonal.
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm < 1e-300) continue;

    cplx x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0, 0.0);
    const cplx alpha = -phase * xnorm;

    // v = x - alpha e1, normalized.
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 < 1e-300) continue;
    const double vinv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] *= vinv;

    // a <- P a P with P = I - 2 v v^dag, restricted to rows/cols > k.
    // w = a v on the active block
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      w[i] = s;
    }
    // scalar = v^dag w
    cplx vw = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vw += std::conj(v[i]) * w[i];
    // a <- a - 2 w v^dag - 2 v w^dag + 4 (v^dag w) v v^dag   (rank-2 update)
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx wi = w[i] - vw * v[i];
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) -= 2.0 * (wi * std::conj(v[j]) + v[i] * std::conj(w[j] - vw * v[j]));
      }
    }
    // Column k collapses onto alpha e1 by construction of the reflector.
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }

    // Accumulate q <- q P (apply reflector to columns k+1.. of q).
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += q(i, j) * v[j];
      s *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= s * std::conj(v[j]);
    }
  }

  // Phase similarity D making the sub-diagonal real nonnegative; the
  // eigenbasis columns pick up the accumulated phases (q <- q D).
  cplx cum(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = a(i, i).real();
    if (i + 1 < n) {
      const cplx e = a(i + 1, i);
      const double ae = std::abs(e);
      off[i + 1] = ae;
      const cplx ph = (ae > 1e-300) ? e / ae : cplx(1.0, 0.0);
      cum *= ph;
      for (std::size_t r = 0; r < n; ++r) q(r, i + 1) *= cum;
    }
  }
}

// Implicit-shift QL on a real symmetric tridiagonal, rotations applied to the
// complex column basis z. Classic tql2 recurrence.
void tql2(std::vector<double>& d, std::vector<double>& e, CMatrix& z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  // e is indexed so that e[i] couples (i-1, i); shift to e[0..n-2] coupling (i, i+1)
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || e[m] == 0.0) break;
      }
      if (m != l) {
        if (iter++ == 64) throw std::runtime_error("hermitian_eig: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx zi1 = z(k, i + 1);
            const cplx zi = z(k, i);
            z(k, i + 1) = s * zi + c * zi1;
            z(k, i) = c * zi - s * zi1;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigResult hermitian_eig(const CMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: not square");
  const std::size_t n = h.rows();
  std::vector<double> d, e;
  CMatrix q;
  tridiagonalize(h, d, e, q);
  tql2(d, e, q);

  // Stable ascending sort by (value, original index).
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigResult out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[idx[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = q(i, idx[j]);
  }
  return out;
}

CMatrix hermitian_exp(const CMatrix& h, double tau) {
  const EigResult eig = hermitian_eig(h);
  const std::size_t n = h.rows();
  CMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx ph = std::exp(cplx(0.0, -tau * eig.values[j]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        u(i, k) += ph * eig.vectors(i, j) * std::conj(eig.vectors(k, j));
  }
  return u;
}

CMatrix hermitian_function(const EigResult& eig,
                           const std::vector<double>& f_of_lambda) {
  const std::size_t n = eig.values.size();
  if (f_of_lambda.size() != n)
    throw std::invalid_argument("hermitian_function: size mismatch");
  CMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double f = f_of_lambda[j];
    if (f == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        m(i, k) += f * eig.vectors(i, j) * std::conj(eig.vectors(k, j));
  }
  return m;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 1e-300);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::integer(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::integer: bound 0");
  // rejection to remove modulo bias
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = gen_();
  } while (r >= limit);
  return r % bound;
}

CMatrix haar_unitary(std::size_t n, Rng& rng) {
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) = cplx(rng.normal(), rng.normal());

  // Modified Gram-Schmidt with re-orthogonalization, then phase fix so the
  // result is Haar distributed.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-200) throw std::runtime_error("haar_unitary: degenerate draw");
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

CMatrix unitary_with_first_column(const cvector& first_column) {
  const std::size_t n = first_column.size();
  CMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) u(i, 0) = first_column[i];
  // complete with standard basis vectors, Gram-Schmidt against previous cols
  std::size_t col = 1;
  for (std::size_t b = 0; b < n && col < n; ++b) {
    cvector v(n, cplx(0.0, 0.0));
    v[b] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < col; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(u(i, k)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u(i, k);
      }
    }
    const double nrm = norm2(v);
    if (nrm < 1e-8) continue;  // basis vector (nearly) parallel, skip
    for (std::size_t i = 0; i < n; ++i) u(i, col) = v[i] / nrm;
    ++col;
  }
  if (col != n) throw std::runtime_error("unitary_with_first_column: completion failed");
  return u;
}

}  // namespace qetulab
