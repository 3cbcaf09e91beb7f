// Copyright 2026 The backflow Authors
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

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "backflow/errors.hpp"

namespace backflow {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Everything in this library lives at
// dimension <= 8, so no attempt is made at sparsity or blocking.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim) : dim_(dim), a_(check_dim(dim) * dim) {}

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows) {
    const int n = static_cast<int>(rows.size());
    ComplexMatrix m(n);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("from_rows: ragged row");
      int j = 0;
      for (const Complex& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int dim() const { return dim_; }

  Complex& operator()(int i, int j) { return a_[index(i, j)]; }
  Complex operator()(int i, int j) const { return a_[index(i, j)]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex c) {
    for (auto& v : a_) v *= c;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(Complex c, ComplexMatrix m) { return m *= c; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex c) { return m *= c; }

  ComplexMatrix operator*(const ComplexMatrix& o) const {
    require_same_dim(o);
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k) {
        const Complex aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < dim_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  // Largest |a_ij - conj(a_ji)|; zero for an exactly Hermitian matrix.
  double hermiticity_error() const {
    double e = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return e;
  }

  double max_abs_diff(const ComplexMatrix& o) const {
    require_same_dim(o);
    double e = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k)
      e = std::max(e, std::abs(a_[k] - o.a_[k]));
    return e;
  }

 private:
  static int check_dim(int dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    return dim;
  }
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
      throw IndexOutOfRange("matrix index (" + std::to_string(i) + "," +
                            std::to_string(j) + ") out of range for dim " +
                            std::to_string(dim_));
    return static_cast<std::size_t>(i) * dim_ + j;
  }
  void require_same_dim(const ComplexMatrix& o) const {
    if (o.dim_ != dim_)
      throw std::invalid_argument("matrix dimension mismatch");
  }

  int dim_;
  std::vector<Complex> a_;
};

// U M U^dagger.
inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

// Pauli matrix by index: 0 -> I, 1 -> X, 2 -> Y, 3 -> Z.
inline ComplexMatrix pauli(int k) {
  const Complex i(0.0, 1.0);
  switch (k) {
    case 0:
      return ComplexMatrix::identity(2);
    case 1:
      return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    case 2:
      return ComplexMatrix::from_rows({{0.0, -i}, {i, 0.0}});
    case 3:
      return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    default:
      throw IndexOutOfRange("pauli index must be 0..3, got " +
                            std::to_string(k));
  }
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == 0.0) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          r(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return r;
}

// Trace out the right (second) tensor factor of a dim = left*right matrix.
inline ComplexMatrix partial_trace_right(const ComplexMatrix& m,
                                         int right_dim) {
  if (right_dim < 1 || m.dim() % right_dim != 0)
    throw std::invalid_argument("partial_trace_right: incompatible dims");
  const int left = m.dim() / right_dim;
  ComplexMatrix r(left);
  for (int i = 0; i < left; ++i)
    for (int j = 0; j < left; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < right_dim; ++k)
        s += m(i * right_dim + k, j * right_dim + k);
      r(i, j) = s;
    }
  return r;
}

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns; column k pairs values[k]
};

// Cyclic complex Jacobi eigensolver for Hermitian matrices. Unconditionally
// robust at the dimensions used here (<= 8) including fully degenerate
// spectra; converges quadratically once off-diagonal mass is small.
inline EigenSystem hermitian_eig(const ComplexMatrix& m) {
  const double herr = m.hermiticity_error();
  if (herr > 1e-10)
    throw NonHermitian("hermitian_eig: hermiticity error " +
                       std::to_string(herr));
  const int n = m.dim();
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off2 += 2.0 * std::norm(a(i, j));
    if (std::sqrt(off2) <= 1e-13) break;

    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = (t * c) * (apq / g);

        for (int k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - std::conj(s) * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {  // A <- J^dagger A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = std::conj(s) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {  // V <- V J
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(s) * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigenSystem es{std::vector<double>(n), ComplexMatrix(n)};
  for (int k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-1e-8, 0) are treated as numerical noise and clamped to
// zero; anything below -1e-8 is a genuine positivity violation.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  EigenSystem es = hermitian_eig(m);
  if (!es.values.empty() && es.values.back() < -1e-8)
    throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(es.values.back()));
  const int n = m.dim();
  std::vector<double> root(n);
  for (int k = 0; k < n; ++k)
    root[k] = std::sqrt(std::max(es.values[k], 0.0));
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k)
        s += root[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
      r(i, j) = s;
    }
  return r;
}

}  // namespace backflow
