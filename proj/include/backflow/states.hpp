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
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "backflow/errors.hpp"
#include "backflow/matrix.hpp"

namespace backflow {

// Two-qubit density matrix. Construction validates Hermiticity, unit trace
// and positivity, so downstream code can assume a physical state.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 4)
      throw std::invalid_argument("DensityMatrix: expected dimension 4");
    const double herr = m_.hermiticity_error();
    if (herr > 1e-10)
      throw NonHermitian("DensityMatrix: hermiticity error " +
                         std::to_string(herr));
    const double terr = std::abs(m_.trace() - Complex(1.0));
    if (terr > 1e-10)
      throw Unphysical("DensityMatrix: trace deviates from 1 by " +
                       std::to_string(terr));
    EigenSystem es = hermitian_eig(m_);
    if (es.values.back() < -1e-9)
      throw Unphysical("DensityMatrix: negative eigenvalue " +
                       std::to_string(es.values.back()));
  }

  const ComplexMatrix& matrix() const { return m_; }
  EigenSystem eig() const { return hermitian_eig(m_); }

 private:
  ComplexMatrix m_;
};

// Correlation coefficients (r1, r2, r3) of a Bell-diagonal state
//   rho = (I (x) I + sum_i r_i sigma_i (x) sigma_i) / 4.
// The library's closed forms assume |r1| >= |r2|, and construction rejects
// triples whose Bell-basis spectrum is negative.
struct CorrelationTriple {
  double r1, r2, r3;

  CorrelationTriple(double c1, double c2, double c3) : r1(c1), r2(c2), r3(c3) {
    if (std::abs(r1) < std::abs(r2) - 1e-12)
      throw std::invalid_argument(
          "CorrelationTriple: requires |r1| >= |r2|, got (" +
          std::to_string(r1) + ", " + std::to_string(r2) + ")");
    const auto spec = bell_spectrum();
    for (double w : spec)
      if (w < -1e-12)
        throw Unphysical("CorrelationTriple: Bell eigenvalue " +
                         std::to_string(w) + " < 0 for (" + std::to_string(r1) +
                         ", " + std::to_string(r2) + ", " + std::to_string(r3) +
                         ")");
  }

  // Eigenvalues of the Bell-diagonal state in the order
  // (Phi+, Phi-, Psi+, Psi-).
  std::array<double, 4> bell_spectrum() const {
    return {0.25 * (1.0 + r1 - r2 + r3), 0.25 * (1.0 - r1 + r2 + r3),
            0.25 * (1.0 + r1 + r2 - r3), 0.25 * (1.0 - r1 - r2 - r3)};
  }

  static bool is_physical(double c1, double c2, double c3) {
    return 1.0 + c1 - c2 + c3 >= -4e-12 && 1.0 - c1 + c2 + c3 >= -4e-12 &&
           1.0 + c1 + c2 - c3 >= -4e-12 && 1.0 - c1 - c2 - c3 >= -4e-12;
  }
};

// |Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2).
inline DensityMatrix bell_phi_plus() {
  ComplexMatrix m(4);
  m(0, 0) = 0.5;
  m(0, 3) = 0.5;
  m(3, 0) = 0.5;
  m(3, 3) = 0.5;
  return DensityMatrix(m);
}

// Bell-diagonal state with the given correlation triple. In the computational
// basis this is an X-shaped matrix: diagonal (1 +- r3)/4, anti-diagonal
// (r1 -+ r2)/4.
inline DensityMatrix x_state(const CorrelationTriple& r) {
  ComplexMatrix m(4);
  m(0, 0) = 0.25 * (1.0 + r.r3);
  m(1, 1) = 0.25 * (1.0 - r.r3);
  m(2, 2) = 0.25 * (1.0 - r.r3);
  m(3, 3) = 0.25 * (1.0 + r.r3);
  m(0, 3) = 0.25 * (r.r1 - r.r2);
  m(3, 0) = 0.25 * (r.r1 - r.r2);
  m(1, 2) = 0.25 * (r.r1 + r.r2);
  m(2, 1) = 0.25 * (r.r1 + r.r2);
  return DensityMatrix(m);
}

// Random full-rank two-qubit state from the Ginibre ensemble: G G^dagger
// normalized to unit trace. Deterministic in the seed.
inline DensityMatrix random_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  ComplexMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= Complex(1.0 / tr);
  return DensityMatrix(m);
}

// Unit vector on the Bloch sphere.
struct BlochVector {
  double x, y, z;

  BlochVector(double nx, double ny, double nz) : x(nx), y(ny), z(nz) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0))
      throw std::invalid_argument("BlochVector: zero vector");
    x /= n;
    y /= n;
    z /= n;
  }

  static BlochVector from_angles(double theta, double phi) {
    return BlochVector(std::sin(theta) * std::cos(phi),
                       std::sin(theta) * std::sin(phi), std::cos(theta));
  }

  // n . sigma on the first qubit, i.e. (n . sigma) (x) I.
  ComplexMatrix observable() const {
    ComplexMatrix s(2);
    s += Complex(x) * pauli(1);
    s += Complex(y) * pauli(2);
    s += Complex(z) * pauli(3);
    return kron(s, ComplexMatrix::identity(2));
  }
};

// Real symmetric 3x3 matrix with just enough functionality for the
// correlation kernels: quadratic forms and the extreme eigenvalues.
struct SymMatrix3 {
  // Row-major storage of the full symmetric matrix. Writers are expected to
  // fill both halves; eigenvalues() reads the upper triangle only.
  std::array<std::array<double, 3>, 3> a{};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }

  double quad_form(const BlochVector& n) const {
    const std::array<double, 3> v{n.x, n.y, n.z};
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += v[i] * a[i][j] * v[j];
    return s;
  }

  // All three eigenvalues, descending, via the trigonometric solution of the
  // characteristic cubic (no iteration, exact up to rounding).
  std::array<double, 3> eigenvalues() const {
    const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (p1 < 1e-28) {
      std::array<double, 3> d{a[0][0], a[1][1], a[2][2]};
      std::sort(d.begin(), d.end(), std::greater<>());
      return d;
    }
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    const double p2 = (a[0][0] - q) * (a[0][0] - q) +
                      (a[1][1] - q) * (a[1][1] - q) +
                      (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-14) return {q, q, q};
    // r = det((A - qI)/p) / 2, clamped against rounding drift.
    const double b00 = (a[0][0] - q) / p, b11 = (a[1][1] - q) / p,
                 b22 = (a[2][2] - q) / p;
    const double b01 = a[0][1] / p, b02 = a[0][2] / p, b12 = a[1][2] / p;
    double r = 0.5 * (b00 * (b11 * b22 - b12 * b12) -
                      b01 * (b01 * b22 - b12 * b02) +
                      b02 * (b01 * b12 - b11 * b02));
    r = std::clamp(r, -1.0, 1.0);
    // phi in [0, pi/3]: cos(phi) gives the largest root, cos(phi + 2pi/3)
    // the smallest, and the trace fixes the middle one.
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {hi, 3.0 * q - hi - lo, lo};
  }

  double max_eigenvalue() const { return eigenvalues()[0]; }
  double min_eigenvalue() const { return eigenvalues()[2]; }
};

}  // namespace backflow
