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
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "backflow/channels.hpp"
#include "backflow/errors.hpp"
#include "backflow/measures.hpp"

// Non-Markovianity quantification: a dynamics is flagged non-Markovian when a
// correlation measure X(t) increases somewhere, and the quantifier
// N = sum_k [X(t_end^k) - X(t_start^k)] accumulates the gain over all
// increase intervals. The interval-sum form is exact under monotone
// segmentation, so it is the primary route; integrating the clipped
// derivative is kept as a cross-check in the tests.

namespace backflow {

struct Trajectory {
  std::vector<double> times;
  std::vector<double> q_values;  // LQFI at each time
  std::vector<double> u_values;  // LQU at each time
};

struct IncreaseInterval {
  double t_start;
  double t_end;
  double delta;  // measure gain X(t_end) - X(t_start), > 0
};

// One measure's intervals and their accumulated gain.
struct MeasureGain {
  std::vector<IncreaseInterval> intervals;
  double n = 0.0;
};

struct NonMarkovReport {
  std::vector<IncreaseInterval> q_intervals;
  std::vector<IncreaseInterval> u_intervals;
  double n_lqfi = 0.0;
  double n_lqu = 0.0;
  std::optional<double> ratio;  // n_lqfi / n_lqu, absent when n_lqu = 0
};

// Pointwise Q and U along a time grid.
inline Trajectory sample_trajectory(const ChannelSpec& spec,
                                    const std::vector<double>& t_grid) {
  if (t_grid.empty() || t_grid.front() < 0.0)
    throw std::invalid_argument("sample_trajectory: grid must start at t >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument(
          "sample_trajectory: grid must be strictly increasing");
  Trajectory tr;
  tr.times = t_grid;
  tr.q_values.reserve(t_grid.size());
  tr.u_values.reserve(t_grid.size());
  for (double t : t_grid) {
    const MeasurePair m = measures_from_eig(evolve(spec, t).eig());
    tr.q_values.push_back(m.lqfi);
    tr.u_values.push_back(m.lqu);
  }
  return tr;
}

// Numerical df/dt: central difference with one Richardson halving away from
// the boundary, a one-sided second-order stencil near t = 0 where f is not
// evaluable at negative times.
template <typename F>
double derivative(F&& f, double t, double h0 = 1e-4) {
  if (!(h0 > 0.0))
    throw std::invalid_argument("derivative: h0 must be positive");
  if (t < h0)
    return (-3.0 * f(t) + 4.0 * f(t + h0) - f(t + 2.0 * h0)) / (2.0 * h0);
  const auto central = [&](double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
  };
  return (4.0 * central(0.5 * h0) - central(h0)) / 3.0;
}

namespace detail {

// Locate the point in [lo, hi] where df/dt crosses zero, by bisection on the
// derivative sign. rising_right = true finds a falling-to-rising crossing
// (interval onset), false the reverse (interval end).
template <typename F>
double refine_crossing(F& f, double lo, double hi, bool rising_right,
                       double tol) {
  const auto rising = [&](double t) { return derivative(f, t) > 0.0; };
  if (rising(lo) == rising_right) return lo;
  if (rising(hi) != rising_right) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (rising(mid) == rising_right)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// All maximal intervals inside [t0, t1] on which f increases: scan on a
// uniform n_scan-point grid, refine each slope sign change by bisection on
// the numerical derivative, and drop gains below 1e-12.
template <typename F>
std::vector<IncreaseInterval> increasing_intervals(F&& f, double t0, double t1,
                                                   int n_scan) {
  if (n_scan < 100)
    throw std::invalid_argument("increasing_intervals: n_scan must be >= 100");
  if (!(t1 > t0))
    throw std::invalid_argument("increasing_intervals: need t1 > t0");

  const int n = n_scan;
  std::vector<double> t(n), v(n);
  for (int i = 0; i < n; ++i) {
    t[i] = t0 + (t1 - t0) * i / (n - 1);
    v[i] = f(t[i]);
  }

  const double tol = 1e-8 * (t1 - t0);
  std::vector<IncreaseInterval> out;
  int i = 0;
  while (i < n - 1) {
    if (!(v[i + 1] > v[i])) {
      ++i;
      continue;
    }
    int j = i;  // run of rising segments [i, j]
    while (j + 1 < n - 1 && v[j + 2] > v[j + 1]) ++j;

    const double start =
        (i == 0) ? detail::refine_crossing(f, t[0], t[1], true, tol)
                 : detail::refine_crossing(f, t[i - 1], t[i + 1], true, tol);
    const double end =
        (j == n - 2)
            ? detail::refine_crossing(f, t[n - 2], t[n - 1], false, tol)
            : detail::refine_crossing(f, t[j], t[j + 2], false, tol);

    if (end > start) {
      const double delta = f(end) - f(start);
      if (delta > 1e-12) out.push_back({start, end, delta});
    }
    i = j + 1;
  }
  return out;
}

// N for a single measure: the accumulated gain over all increase intervals.
template <typename F>
MeasureGain non_markovianity(F&& f, double t0, double t1, int n_scan) {
  MeasureGain gain;
  gain.intervals = increasing_intervals(f, t0, t1, n_scan);
  for (const IncreaseInterval& iv : gain.intervals) gain.n += iv.delta;
  return gain;
}

// Both quantifiers of a channel over a window, plus their ratio.
inline NonMarkovReport channel_report(const ChannelSpec& spec, double t0,
                                      double t1, int n_scan) {
  const auto f_q = [&](double t) { return lqfi(evolve(spec, t)); };
  const auto f_u = [&](double t) { return lqu(evolve(spec, t)); };
  MeasureGain gq = non_markovianity(f_q, t0, t1, n_scan);
  MeasureGain gu = non_markovianity(f_u, t0, t1, n_scan);
  NonMarkovReport report;
  report.q_intervals = std::move(gq.intervals);
  report.u_intervals = std::move(gu.intervals);
  report.n_lqfi = gq.n;
  report.n_lqu = gu.n;
  if (report.n_lqu > 0.0) report.ratio = report.n_lqfi / report.n_lqu;
  return report;
}

struct MaximizeResult {
  NonMarkovReport report;
  CorrelationTriple best;
};

// Maximal N over an explicit list of initial correlation triples
// (depolarizing family). Candidates are ranked by N^LQFI; ties keep the
// earliest candidate, so a lexicographically sorted list gives the
// lexicographically smallest argmax.
inline MaximizeResult maximize_over_triples(
    const DepolarizingParams& base, double t0, double t1, int n_scan,
    const std::vector<CorrelationTriple>& candidates) {
  if (candidates.empty())
    throw std::invalid_argument("maximize_over_triples: no candidates");
  std::optional<MaximizeResult> best;
  for (const CorrelationTriple& r : candidates) {
    ChannelSpec spec{DepolarizingParams{base.mu, r}};
    NonMarkovReport rep = channel_report(spec, t0, t1, n_scan);
    if (!best || rep.n_lqfi > best->report.n_lqfi)
      best = MaximizeResult{std::move(rep), r};
  }
  return *best;
}

// Grid search over the physical Bell-diagonal tetrahedron (respecting the
// canonical |r1| >= |r2| ordering) with the given step. For the dephasing
// and amplitude-damping families the Bell pair is already the maximizer, so
// the plain report is returned with the Bell-point triple (1, -1, 1).
inline MaximizeResult maximize_over_initial(const ChannelSpec& spec, double t0,
                                            double t1, double r_grid_step,
                                            int n_scan = 200) {
  if (!(r_grid_step > 0.0) || r_grid_step > 0.5)
    throw std::invalid_argument(
        "maximize_over_initial: r_grid_step must be in (0, 0.5]");
  if (!std::holds_alternative<DepolarizingParams>(spec.family))
    return {channel_report(spec, t0, t1, n_scan),
            CorrelationTriple{1.0, -1.0, 1.0}};

  const auto& base = std::get<DepolarizingParams>(spec.family);
  std::vector<double> axis;
  for (double v = -1.0; v <= 1.0 + 1e-12; v += r_grid_step)
    axis.push_back(std::min(v, 1.0));
  std::vector<CorrelationTriple> candidates;
  for (double r1 : axis)
    for (double r2 : axis) {
      if (std::abs(r1) < std::abs(r2) - 1e-12) continue;
      for (double r3 : axis)
        if (CorrelationTriple::is_physical(r1, r2, r3))
          candidates.emplace_back(r1, r2, r3);
    }
  return maximize_over_triples(base, t0, t1, n_scan, candidates);
}

}  // namespace backflow
