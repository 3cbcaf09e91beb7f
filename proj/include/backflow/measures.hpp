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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "backflow/matrix.hpp"
#include "backflow/states.hpp"

// Discord-like correlation measures for a two-qubit state rho_AB, with the
// probe observable acting on qubit A:
//
//   L(n) = (n . sigma) (x) I,   |n| = 1.
//
// Quantum Fisher information F(rho, L) and Wigner-Yanase skew information
// I(rho, L) are both computed from the spectral decomposition
// rho = sum_m h_m |m><m|:
//
//   F = 1/2 sum_{m,n} (h_m - h_n)^2 / (h_m + h_n) |<m|L|n>|^2
//   I = 1/2 sum_{m,n} (sqrt(h_m) - sqrt(h_n))^2   |<m|L|n>|^2
//
// Because L(n)^2 = I for unit n, each has an exact quadratic-form reduction
//
//   F = 1 - n^T S n,   S_kl = sum_{m,n} 2 h_m h_n / (h_m + h_n) T^k_mn (T^l_mn)*
//   I = 1 - n^T B n,   B_kl = sum_{m,n} sqrt(h_m h_n)             T^k_mn (T^l_mn)*
//
// with T^k_mn = <m|sigma_k (x) I|n>, the sums running over all ordered pairs
// including m = n, and pairs with h_m + h_n below the spectral floor dropped.
// The local measures are the minima over probe directions:
//
//   Q(rho) = min_n F = 1 - eig_max(S)     (local quantum Fisher information)
//   U(rho) = min_n I = 1 - eig_max(B)     (local quantum uncertainty)

namespace backflow {

namespace detail {

// Eigenvalue pairs with h_m + h_n at or below this contribute nothing to the
// Fisher sum and would only inject 0/0 noise, so they are dropped outright.
inline constexpr double kSpectralFloor = 1e-12;

// Everything the measures need, precomputed once per state: the Pauli matrix
// elements in the eigenbasis and the pair weights of both kernels.
struct SpectralKernel {
  int d;
  std::array<std::vector<Complex>, 3> elem;  // elem[k][m*d+n] = T^{k+1}_mn
  std::vector<double> w_fisher, w_s, w_skew, w_b;

  explicit SpectralKernel(const EigenSystem& es)
      : d(es.vectors.dim()),
        w_fisher(d * d),
        w_s(d * d),
        w_skew(d * d),
        w_b(d * d) {
    const ComplexMatrix vdag = es.vectors.adjoint();
    const ComplexMatrix id_right = ComplexMatrix::identity(d / 2);
    for (int k = 0; k < 3; ++k) {
      const ComplexMatrix t =
          vdag * (kron(pauli(k + 1), id_right) * es.vectors);
      elem[k].resize(d * d);
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) elem[k][m * d + n] = t(m, n);
    }
    for (int m = 0; m < d; ++m) {
      // Eigenvalues a hair below zero are rounding noise on a PSD input.
      const double hm = es.values[m];
      const double rm = std::sqrt(std::max(hm, 0.0));
      for (int n = 0; n < d; ++n) {
        const double hn = es.values[n];
        const double rn = std::sqrt(std::max(hn, 0.0));
        const std::size_t idx = m * d + n;
        const double sum = hm + hn;
        if (sum > kSpectralFloor) {
          const double diff = hm - hn;
          w_fisher[idx] = diff * diff / sum;
          w_s[idx] = 2.0 * hm * hn / sum;
        }
        w_skew[idx] = (rm - rn) * (rm - rn);
        w_b[idx] = rm * rn;
      }
    }
  }

  double fisher(const BlochVector& n) const { return half_sum(w_fisher, n); }
  double skew(const BlochVector& n) const { return half_sum(w_skew, n); }

  SymMatrix3 s_mat() const { return quad_matrix(w_s); }
  SymMatrix3 b_mat() const { return quad_matrix(w_b); }

 private:
  double half_sum(const std::vector<double>& w, const BlochVector& n) const {
    double acc = 0.0;
    for (std::size_t idx = 0; idx < w.size(); ++idx) {
      if (w[idx] == 0.0) continue;
      const Complex lmn =
          n.x * elem[0][idx] + n.y * elem[1][idx] + n.z * elem[2][idx];
      acc += w[idx] * std::norm(lmn);
    }
    return 0.5 * acc;
  }

  SymMatrix3 quad_matrix(const std::vector<double>& w) const {
    SymMatrix3 s;
    for (int k = 0; k < 3; ++k)
      for (int l = k; l < 3; ++l) {
        double acc = 0.0;
        for (std::size_t idx = 0; idx < w.size(); ++idx)
          acc += w[idx] * (elem[k][idx] * std::conj(elem[l][idx])).real();
        s(k, l) = acc;
        s(l, k) = acc;
      }
    return s;
  }
};

}  // namespace detail

inline double qfi_from_eig(const EigenSystem& es, const BlochVector& n) {
  return detail::SpectralKernel(es).fisher(n);
}

inline double qfi(const DensityMatrix& rho, const BlochVector& n) {
  return qfi_from_eig(rho.eig(), n);
}

inline double skew_info_from_eig(const EigenSystem& es, const BlochVector& n) {
  return detail::SpectralKernel(es).skew(n);
}

inline double skew_info(const DensityMatrix& rho, const BlochVector& n) {
  return skew_info_from_eig(rho.eig(), n);
}

// Skew information by its defining commutator, -1/2 Tr([sqrt(rho), L]^2).
// Independent of the spectral-sum route; used to cross-check it.
inline double skew_info_commutator(const DensityMatrix& rho,
                                   const BlochVector& n) {
  const ComplexMatrix sq = psd_sqrt(rho.matrix());
  const ComplexMatrix l = n.observable();
  const ComplexMatrix c = sq * l - l * sq;
  return -0.5 * (c * c).trace().real();
}

inline SymMatrix3 s_matrix_from_eig(const EigenSystem& es) {
  return detail::SpectralKernel(es).s_mat();
}

inline SymMatrix3 s_matrix(const DensityMatrix& rho) {
  return s_matrix_from_eig(rho.eig());
}

inline SymMatrix3 b_matrix_from_eig(const EigenSystem& es) {
  return detail::SpectralKernel(es).b_mat();
}

inline SymMatrix3 b_matrix(const DensityMatrix& rho) {
  return b_matrix_from_eig(rho.eig());
}

inline double lqfi_from_eig(const EigenSystem& es) {
  return 1.0 - s_matrix_from_eig(es).max_eigenvalue();
}

// Local quantum Fisher information Q(rho).
inline double lqfi(const DensityMatrix& rho) { return lqfi_from_eig(rho.eig()); }

inline double lqu_from_eig(const EigenSystem& es) {
  return 1.0 - b_matrix_from_eig(es).max_eigenvalue();
}

// Local quantum uncertainty U(rho).
inline double lqu(const DensityMatrix& rho) { return lqu_from_eig(rho.eig()); }

struct MeasurePair {
  double lqfi;
  double lqu;
};

// Both measures off one spectral decomposition; the per-point workhorse for
// trajectory sampling.
inline MeasurePair measures_from_eig(const EigenSystem& es) {
  const detail::SpectralKernel kernel(es);
  return {1.0 - kernel.s_mat().max_eigenvalue(),
          1.0 - kernel.b_mat().max_eigenvalue()};
}

inline MeasurePair measures(const DensityMatrix& rho) {
  return measures_from_eig(rho.eig());
}

enum class MinKernel { qfi, skew };

struct MinSearchResult {
  double value;
  BlochVector direction;
};

// Direct minimization over probe directions: a Fibonacci-sphere scan of
// resolution^2 points followed by coordinate descent in (theta, phi) with
// step halving. Slow but assumption-free; the eigenvalue formulas are tested
// against it.
inline MinSearchResult brute_force_min(const DensityMatrix& rho,
                                       MinKernel which,
                                       int coarse_resolution = 32) {
  if (coarse_resolution < 32)
    throw std::invalid_argument("brute_force_min: resolution must be >= 32");
  const detail::SpectralKernel kernel(rho.eig());
  const auto eval = [&](double theta, double phi) {
    const BlochVector n = BlochVector::from_angles(theta, phi);
    return which == MinKernel::qfi ? kernel.fisher(n) : kernel.skew(n);
  };

  const long points = static_cast<long>(coarse_resolution) * coarse_resolution;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = std::numeric_limits<double>::infinity();
  double theta = 0.0, phi = 0.0;
  for (long i = 0; i < points; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / points;
    const double cand_phi = golden * static_cast<double>(i);
    const double cand_theta = std::acos(z);
    const double v = eval(cand_theta, cand_phi);
    if (v < best) {
      best = v;
      theta = cand_theta;
      phi = cand_phi;
    }
  }

  double step = std::numbers::pi / coarse_resolution;
  while (step >= 1e-7) {
    bool improved = false;
    const double moves[4][2] = {{theta + step, phi},
                                {theta - step, phi},
                                {theta, phi + step},
                                {theta, phi - step}};
    for (const auto& mv : moves) {
      const double v = eval(mv[0], mv[1]);
      if (v < best) {
        best = v;
        theta = mv[0];
        phi = mv[1];
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, BlochVector::from_angles(theta, phi)};
}

}  // namespace backflow
