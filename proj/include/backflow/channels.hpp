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
#include <string>
#include <variant>
#include <vector>

#include "backflow/errors.hpp"
#include "backflow/integrate.hpp"
#include "backflow/matrix.hpp"
#include "backflow/states.hpp"

// Noise channels on a two-qubit probe prepared in a Bell or Bell-diagonal
// state. Dephasing and amplitude damping act on qubit B alone; the
// depolarizing family sends each qubit through its own copy of the map.
// All three are exactly solvable and reduce to scalar functions of time
// that feed a common state builder.

namespace backflow {

// ---------------------------------------------------------------------------
// Colored dephasing: an Ohmic-class environment with spectral exponent s and
// cutoff omega_c. The rate changes sign for s > 2, which is the
// non-Markovian regime of interest.

struct DephasingParams {
  double s = 1.0;        // spectral exponent, > 0
  double omega_c = 1.0;  // cutoff frequency, > 0
};

namespace detail {
inline void check(const DephasingParams& p) {
  if (!(p.s > 0.0) || !(p.omega_c > 0.0))
    throw std::invalid_argument("dephasing: s and omega_c must be positive");
}
}  // namespace detail

// Instantaneous dephasing rate gamma(t).
inline double dephasing_rate(double t, const DephasingParams& p) {
  detail::check(p);
  const double x = p.omega_c * t;
  return p.omega_c * std::tgamma(p.s) * std::sin(p.s * std::atan(x)) /
         std::pow(1.0 + x * x, 0.5 * p.s);
}

// Accumulated decoherence Lambda(t) = int_0^t gamma, in closed form.
inline double dephasing_decoherence_closed(double t,
                                           const DephasingParams& p) {
  detail::check(p);
  const double x = p.omega_c * t;
  const double u = std::atan(x);
  if (std::abs(p.s - 1.0) < 1e-9) return 0.5 * std::log1p(x * x);
  return std::tgamma(p.s) / (p.s - 1.0) *
         (1.0 - std::cos((p.s - 1.0) * u) *
                    std::pow(1.0 + x * x, -0.5 * (p.s - 1.0)));
}

// Accumulated decoherence by direct quadrature of the rate. The closed form
// above exists precisely to arbitrate this one in tests, so they must stay
// independent.
inline double dephasing_decoherence(double t, const DephasingParams& p) {
  detail::check(p);
  if (t == 0.0) return 0.0;
  return adaptive_simpson([&](double u) { return dephasing_rate(u, p); }, 0.0,
                          t, 1e-10);
}

// Coherence factor P(t) = exp(-2 Lambda(t)).
inline double dephasing_coherence(double t, const DephasingParams& p) {
  return std::exp(-2.0 * dephasing_decoherence(t, p));
}

// Bell pair with qubit B dephased: off-diagonals scaled by P(t).
inline DensityMatrix dephasing_state(double t, const DephasingParams& p) {
  const double coh = dephasing_coherence(t, p);
  ComplexMatrix m(4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(0, 3) = 0.5 * coh;
  m(3, 0) = 0.5 * coh;
  return DensityMatrix(m);
}

// ---------------------------------------------------------------------------
// Resonant amplitude damping: qubit B decays into a Lorentzian reservoir of
// linewidth lambda, coupling gamma0 and detuning delta. The excited-state
// amplitude R(t) obeys a memory-kernel equation solved in closed form.

struct AmplitudeDampingParams {
  double lambda = 1.0;  // reservoir linewidth, > 0
  double gamma0 = 1.0;  // coupling strength, > 0
  double delta = 0.0;   // detuning from the reservoir center
};

namespace detail {
inline void check(const AmplitudeDampingParams& p) {
  if (!(p.lambda > 0.0) || !(p.gamma0 > 0.0))
    throw std::invalid_argument(
        "amplitude damping: lambda and gamma0 must be positive");
}
}  // namespace detail

// Closed-form excited-state amplitude
//   R(t) = e^{-z t/2} [cosh(w t/2) + (z/w) sinh(w t/2)],
// z = lambda - i delta, w = sqrt(z^2 - 2 gamma0 lambda). Written in the
// exponential-pair form, which is branch-independent in w and immune to
// cosh overflow at large lambda t.
inline Complex ad_amplitude(double t, const AmplitudeDampingParams& p) {
  detail::check(p);
  if (t == 0.0) return 1.0;  // exact by definition, not up to rounding
  const Complex z(p.lambda, -p.delta);
  const Complex w = std::sqrt(z * z - 2.0 * p.gamma0 * p.lambda);
  if (std::abs(w) < 1e-9)
    return std::exp(-0.5 * z * t) * (1.0 + 0.5 * z * t);
  return 0.5 * (1.0 + z / w) * std::exp(0.5 * (w - z) * t) +
         0.5 * (1.0 - z / w) * std::exp(-0.5 * (w + z) * t);
}

struct AmplitudeTrajectory {
  std::vector<double> times;
  std::vector<Complex> values;
};

// Independent arbiter for ad_amplitude: integrate the memory-kernel equation
//   R'(t) = -int_0^t g(t - t1) R(t1) dt1,   g(tau) = (gamma0 lambda / 2) e^{-z tau}
// directly. The exponential kernel makes the history integral incremental
// (O(1) per step via the running sum H), and Heun's method gives O(dt^2)
// accuracy overall. No part of the closed form enters.
inline AmplitudeTrajectory ad_amplitude_oracle(double t_max,
                                               const AmplitudeDampingParams& p,
                                               double dt) {
  detail::check(p);
  if (!(dt > 0.0) || !(t_max > 0.0))
    throw std::invalid_argument("ad_amplitude_oracle: need dt, t_max > 0");
  const double rate_scale =
      std::max({p.lambda, p.gamma0, std::abs(p.delta)});
  if (dt > 1e-3 / rate_scale)
    throw StepTooLarge("ad_amplitude_oracle: dt " + std::to_string(dt) +
                       " exceeds 1e-3 / max(lambda, gamma0, |delta|)");

  const Complex z(p.lambda, -p.delta);
  const double g0 = 0.5 * p.gamma0 * p.lambda;
  const Complex decay = std::exp(-z * dt);
  const std::size_t n = static_cast<std::size_t>(std::ceil(t_max / dt));

  AmplitudeTrajectory out;
  out.times.reserve(n + 1);
  out.values.reserve(n + 1);
  out.times.push_back(0.0);
  out.values.push_back(1.0);

  // Trapezoidal history: with G_j = sum_{i=0}^{j-1} E^{j-i} R_i and
  // E = e^{-z dt}, the composite rule reads K_j = dt (G_j - E^j R_0 / 2
  // + R_j / 2); G obeys the uniform recurrence G_{j+1} = E (G_j + R_j).
  Complex history = 0.0;   // G_j
  Complex decay_pow = 1.0; // E^j
  Complex r = 1.0;         // R_j
  Complex deriv = 0.0;     // R'_0 = 0: the memory integral is empty at t = 0.

  for (std::size_t j = 0; j < n; ++j) {
    history = decay * (history + r);  // advance G_j -> G_{j+1}
    decay_pow *= decay;
    const Complex predicted = r + dt * deriv;
    const auto rhs = [&](Complex r_next) {
      return -g0 * dt * (history - 0.5 * decay_pow + 0.5 * r_next);
    };
    const Complex corrected = r + 0.5 * dt * (deriv + rhs(predicted));
    r = corrected;
    deriv = rhs(r);
    out.times.push_back(dt * static_cast<double>(j + 1));
    out.values.push_back(r);
  }
  return out;
}

// Bell pair with qubit B damped by amplitude R: in the basis
// {00, 01, 10, 11}, populations (1/2, 0, (1-|R|^2)/2, |R|^2/2) and coherence
// <00|rho|11> = conj(R)/2.
inline DensityMatrix ad_state(double t, const AmplitudeDampingParams& p) {
  const Complex r = ad_amplitude(t, p);
  const double x = std::norm(r);
  ComplexMatrix m(4);
  m(0, 0) = 0.5;
  m(2, 2) = 0.5 * (1.0 - x);
  m(3, 3) = 0.5 * x;
  m(0, 3) = 0.5 * std::conj(r);
  m(3, 0) = 0.5 * r;
  return DensityMatrix(m);
}

// ---------------------------------------------------------------------------
// Depolarizing noise with an exponentially damped oscillating memory of
// frequency ratio mu, applied to each qubit of a Bell-diagonal pair. For
// mu > pi / ln 3 the intermediate map leaves the completely positive cone,
// so the mixing weights are quasi-probabilities and the map must be applied
// in conjugation form rather than through square-root Kraus operators.

struct DepolarizingParams {
  double mu = 2.0;                        // memory frequency ratio, > 0
  CorrelationTriple r{0.6, 0.4, -0.2};    // initial Bell-diagonal correlations
};

namespace detail {
inline void check(const DepolarizingParams& p) {
  if (!(p.mu > 0.0))
    throw std::invalid_argument("depolarizing: mu must be positive");
}
}  // namespace detail

// Memory function Upsilon(nu) = e^{-nu} (cos(mu nu) + sin(mu nu)/mu).
inline double depol_memory(double nu, double mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("depol_memory: mu must be positive");
  return std::exp(-nu) * (std::cos(mu * nu) + std::sin(mu * nu) / mu);
}

// d Upsilon / d nu, exact: the cosine terms cancel.
inline double depol_memory_deriv(double nu, double mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("depol_memory_deriv: mu must be positive");
  return -std::exp(-nu) * std::sin(mu * nu) * (mu * mu + 1.0) / mu;
}

struct DepolProbs {
  std::array<double, 4> p;   // weights of I, X, Y, Z conjugations
  bool completely_positive;  // all weights nonnegative (up to rounding)
};

inline DepolProbs depol_probs_from_memory(double upsilon) {
  DepolProbs out;
  out.p[1] = out.p[2] = out.p[3] = 0.25 * (1.0 - upsilon);
  out.p[0] = 1.0 - 3.0 * out.p[1];  // keeps sum(p) = 1 exact in floating point
  out.completely_positive = true;
  for (double w : out.p)
    if (w < -1e-12) out.completely_positive = false;
  return out;
}

inline DepolProbs depol_probs(double nu, double mu) {
  return depol_probs_from_memory(depol_memory(nu, mu));
}

// Square-root Kraus operators sqrt(p_k) sigma_k of the single-qubit map.
// Only defined inside the completely positive cone.
inline std::array<ComplexMatrix, 4> depol_kraus(double nu, double mu) {
  const DepolProbs probs = depol_probs(nu, mu);
  if (!probs.completely_positive)
    throw NotCompletelyPositive(
        "depol_kraus: negative weight at nu = " + std::to_string(nu) +
        ", mu = " + std::to_string(mu) + "; use depol_apply instead");
  std::array<ComplexMatrix, 4> k{ComplexMatrix(2), ComplexMatrix(2),
                                 ComplexMatrix(2), ComplexMatrix(2)};
  for (int i = 0; i < 4; ++i)
    k[i] = Complex(std::sqrt(std::max(probs.p[i], 0.0))) * pauli(i);
  return k;
}

// Two-qubit conjugation sum
//   rho' = sum_{k,l} p_k p_l (sigma_k (x) sigma_l) rho (sigma_k (x) sigma_l).
// With nonnegative weights this is exactly the Kraus evolution under
// E_k = sqrt(p_k) sigma_k on each qubit; the conjugation form stays well
// defined when the weights turn into quasi-probabilities.
inline ComplexMatrix depol_conjugation(const ComplexMatrix& rho,
                                       const DepolProbs& probs) {
  if (rho.dim() != 4)
    throw std::invalid_argument("depol_conjugation: expected a 4x4 matrix");
  ComplexMatrix out(4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const double w = probs.p[k] * probs.p[l];
      if (w == 0.0) continue;
      const ComplexMatrix op = kron(pauli(k), pauli(l));
      out += Complex(w) * (op * rho * op);
    }
  return out;
}

inline DensityMatrix depol_apply_with_memory(const DensityMatrix& rho,
                                             double upsilon) {
  return DensityMatrix(
      depol_conjugation(rho.matrix(), depol_probs_from_memory(upsilon)));
}

// Evolve rho0 to dimensionless time nu through the map itself. Valid for all
// nu: outside the completely positive window the intermediate weights are
// negative but the composite state they produce is still physical.
inline DensityMatrix depol_apply(const DensityMatrix& rho0, double nu,
                                 double mu) {
  return DensityMatrix(
      depol_conjugation(rho0.matrix(), depol_probs(nu, mu)));
}

// Closed-form evolved state: Bell-diagonal correlations contract uniformly,
// c_i(nu) = r_i Upsilon(nu)^2.
inline DensityMatrix depol_state_closed(double nu,
                                        const DepolarizingParams& p) {
  detail::check(p);
  const double u = depol_memory(nu, p.mu);
  const double u2 = u * u;
  return x_state(
      CorrelationTriple{p.r.r1 * u2, p.r.r2 * u2, p.r.r3 * u2});
}

// Closed-form Fisher quadratic form of a Bell-diagonal state with
// correlations (c1, c2, c3): diagonal with
//   S_ii = (1 - theta) / (1 - c_i^2),
//   theta = c1^2 + c2^2 + c3^2 + 2 c1 c2 c3.
// Valid away from |c_i| = 1 (the pure Bell points, where the quotient is a
// removable singularity and the generic spectral route should be used).
inline SymMatrix3 bell_diag_s_closed(const CorrelationTriple& c) {
  const std::array<double, 3> v{c.r1, c.r2, c.r3};
  const double theta = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] +
                       2.0 * v[0] * v[1] * v[2];
  SymMatrix3 s;
  for (int i = 0; i < 3; ++i) {
    const double denom = 1.0 - v[i] * v[i];
    if (denom < 1e-12)
      throw std::invalid_argument(
          "bell_diag_s_closed: |c_i| too close to 1, use the spectral route");
    s(i, i) = (1.0 - theta) / denom;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Common front end.

struct ChannelSpec {
  std::variant<DephasingParams, AmplitudeDampingParams, DepolarizingParams>
      family;
};

inline DensityMatrix initial_state(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& p) -> DensityMatrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DepolarizingParams>)
          return x_state(p.r);
        else
          return bell_phi_plus();
      },
      spec.family);
}

inline DensityMatrix evolve(const ChannelSpec& spec, double t) {
  return std::visit(
      [&](const auto& p) -> DensityMatrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DephasingParams>)
          return dephasing_state(t, p);
        else if constexpr (std::is_same_v<T, AmplitudeDampingParams>)
          return ad_state(t, p);
        else
          return depol_state_closed(t, p);
      },
      spec.family);
}

// Default observation window: long enough for each family's transient and
// revival structure to play out.
inline double default_window_end(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DephasingParams>)
          return 30.0 / p.omega_c;
        else if constexpr (std::is_same_v<T, AmplitudeDampingParams>)
          return 25.0 / p.gamma0;
        else
          return 10.0;
      },
      spec.family);
}

}  // namespace backflow
