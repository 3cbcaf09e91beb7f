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

#include <cmath>
#include <cstdint>
#include <string>

#include "backflow/errors.hpp"

namespace backflow {

namespace detail {

template <typename F>
double simpson_recurse(F&& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth,
                       std::int64_t& evals_left) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if ((evals_left -= 2) < 0)
    throw QuadratureFailure("adaptive_simpson: evaluation budget exhausted");
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  // Standard Richardson acceptance for Simpson halving: the error of the
  // refined estimate is err/15.
  if (depth <= 0) {
    if (std::abs(err) > 15.0 * tol)
      throw QuadratureFailure("adaptive_simpson: recursion depth exhausted");
    return left + right + err / 15.0;
  }
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                         evals_left) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                         evals_left);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] with a relative tolerance.
// The absolute tolerance is seeded from a coarse whole-interval estimate so
// the relative target also behaves sensibly when the integral is near zero.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-10) {
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("adaptive_simpson: rel_tol must be positive");
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::int64_t evals_left = 1000000;
  evals_left -= 3;
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // Scale the tolerance by the integrand's mass, not just the signed value,
  // so cancellation in the integral does not demand absolute error ~ 0. The
  // mass is floored by a dense midpoint scan: a feature localized between
  // the three seed points would otherwise set an absurdly small absolute
  // target and exhaust the budget refining it.
  double mass =
      (b - a) / 6.0 * (std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb));
  constexpr int kScaleSamples = 32;
  const double h = (b - a) / kScaleSamples;
  evals_left -= kScaleSamples;
  double dense = 0.0;
  for (int k = 0; k < kScaleSamples; ++k)
    dense += std::abs(f(a + (k + 0.5) * h)) * h;
  mass = std::max(mass, dense);
  const double scale = std::max({std::abs(whole), mass, 1e-300});
  const double tol = rel_tol * scale;
  return sign * detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 60,
                                        evals_left);
}

}  // namespace backflow
