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

// Self-contained consistency checks behind the `verify` and `oracle`
// subcommands. Everything here recomputes library results along independent
// routes (quadratic forms vs direct kernels, closed forms vs quadrature or
// history integration) so a damaged build fails loudly at run time, not just
// in the unit-test suite.

#ifndef BACKFLOW_TOOLS_CHECKS_HPP
#define BACKFLOW_TOOLS_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "backflow/backflow.hpp"
#include "format.hpp"

namespace cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::vector<backflow::BlochVector> seeded_directions(int count,
                                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<backflow::BlochVector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(dirs.size()) < count) {
    const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < 1e-6) continue;
    dirs.push_back(backflow::BlochVector(x / norm, y / norm, z / norm));
  }
  return dirs;
}

inline std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return g;
}

inline CheckResult bounded(const std::string& name, double worst, double tol) {
  CheckResult r;
  r.name = name;
  r.pass = worst <= tol;
  r.detail = "max deviation " + format_double(worst) + " (tolerance " +
             format_double(tol) + ")";
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// verify: invariant suites over random states and the three channel families.

inline std::vector<CheckResult> run_verify_checks(std::uint64_t seed) {
  using namespace backflow;
  std::vector<CheckResult> results;

  // Quadratic-form identities qfi = 1 - n.S.n and skew = 1 - n.B.n tie the
  // matrix summation convention to the direct spectral kernels.
  {
    double worst = 0.0;
    const auto dirs = detail::seeded_directions(10, seed + 1);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = random_state(seed + 100 + k);
      const EigenSystem es = rho.eig();
      const SymMatrix3 s = s_matrix_from_eig(es);
      const SymMatrix3 b = b_matrix_from_eig(es);
      for (const BlochVector& n : dirs) {
        worst = std::max(worst, std::abs(qfi_from_eig(es, n) -
                                         (1.0 - s.quad_form(n))));
        worst = std::max(worst, std::abs(skew_info_from_eig(es, n) -
                                         (1.0 - b.quad_form(n))));
      }
    }
    results.push_back(detail::bounded("quadratic-form-identity", worst, 1e-9));
  }

  // Commutator route for skew information (explicit [sqrt(rho), L]) against
  // the spectral form.
  {
    double worst = 0.0;
    const auto dirs = detail::seeded_directions(4, seed + 2);
    for (int k = 0; k < 8; ++k) {
      const DensityMatrix rho = random_state(seed + 200 + k);
      for (const BlochVector& n : dirs)
        worst = std::max(worst, std::abs(skew_info(rho, n) -
                                         skew_info_commutator(rho, n)));
    }
    results.push_back(detail::bounded("skew-commutator-route", worst, 1e-9));
  }

  // Eigenvalue minimizers vs assumption-free sphere search.
  {
    double worst = 0.0;
    for (int k = 0; k < 6; ++k) {
      const DensityMatrix rho = random_state(seed + 300 + k);
      worst = std::max(worst, std::abs(lqfi(rho) -
                                       brute_force_min(rho, MinKernel::qfi).value));
      worst = std::max(worst, std::abs(lqu(rho) -
                                       brute_force_min(rho, MinKernel::skew).value));
    }
    results.push_back(detail::bounded("measure-minimizer-vs-search", worst, 1e-5));
  }

  // Value sandwich U <= Q <= 2U and range bounds along one trajectory per
  // channel family.
  {
    double worst = 0.0;
    const auto scan = [&](const ChannelSpec& spec, double t1) {
      for (double t : detail::uniform_grid(0.0, t1, 60)) {
        const MeasurePair m = measures_from_eig(evolve(spec, t).eig());
        worst = std::max(worst, m.lqu - m.lqfi);
        worst = std::max(worst, m.lqfi - 2.0 * m.lqu);
        worst = std::max(worst, -m.lqu);
        worst = std::max(worst, m.lqfi - 1.0);
      }
    };
    scan(ChannelSpec{DephasingParams{4.0, 1.0}}, 30.0);
    scan(ChannelSpec{AmplitudeDampingParams{0.3, 1.0, 0.0}}, 25.0);
    scan(ChannelSpec{DepolarizingParams{3.0, CorrelationTriple{0.6, 0.4, -0.2}}},
         10.0);
    results.push_back(detail::bounded("value-sandwich", worst, 1e-9));
  }

  // Adaptive quadrature for the dephasing exponent vs its closed form.
  {
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
      const DephasingParams p{s, 1.0};
      for (double t : detail::uniform_grid(0.0, 20.0, 9))
        worst = std::max(worst, std::abs(dephasing_decoherence(t, p) -
                                         dephasing_decoherence_closed(t, p)));
    }
    results.push_back(detail::bounded("dephasing-quadrature-vs-closed", worst, 1e-9));
  }

  // Dephased Bell pair: the general spectral measure must collapse to P^2.
  {
    double worst = 0.0;
    for (double s : {1.0, 4.0}) {
      const DephasingParams p{s, 1.0};
      for (double t : detail::uniform_grid(0.0, 10.0, 10)) {
        const double coh = dephasing_coherence(t, p);
        worst = std::max(worst,
                         std::abs(lqfi(dephasing_state(t, p)) - coh * coh));
      }
    }
    results.push_back(detail::bounded("dephasing-lqfi-is-coherence-squared",
                                      worst, 1e-8));
  }

  // Damped Bell pair: measure must collapse to |R|^2.
  {
    double worst = 0.0;
    for (double ratio : {0.3, 2.0, 5.0}) {
      const AmplitudeDampingParams p{ratio, 1.0, 0.0};
      for (double t : detail::uniform_grid(0.0, 10.0, 10)) {
        const double x = std::norm(ad_amplitude(t, p));
        worst = std::max(worst, std::abs(lqfi(ad_state(t, p)) - x));
      }
    }
    results.push_back(detail::bounded("amplitude-lqfi-is-amplitude-squared",
                                      worst, 1e-8));
  }

  // Closed-form amplitude vs direct history integration of the memory
  // equation (short window; the oracle subcommand runs the long one).
  {
    const AmplitudeDampingParams p{0.3, 1.0, 0.0};
    const AmplitudeTrajectory traj = ad_amplitude_oracle(10.0, p, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      worst = std::max(worst, std::abs(traj.values[i] -
                                       ad_amplitude(traj.times[i], p)));
    results.push_back(detail::bounded("amplitude-closed-vs-history", worst, 1e-5));
  }

  // Two-sided Pauli conjugation route vs the closed X-state form.
  {
    double worst = 0.0;
    const CorrelationTriple r{0.6, 0.4, -0.2};
    const DensityMatrix rho0 = x_state(r);
    for (double mu : {2.0, 3.0, 5.0}) {
      for (double nu : detail::uniform_grid(0.0, 10.0, 21)) {
        const DensityMatrix via_map = depol_apply(rho0, nu, mu);
        const DensityMatrix closed =
            depol_state_closed(nu, DepolarizingParams{mu, r});
        worst = std::max(worst,
                         via_map.matrix().max_abs_diff(closed.matrix()));
      }
    }
    results.push_back(detail::bounded("depolarizing-route-agreement", worst, 1e-10));
  }

  // Probability bookkeeping: exact unit sum, equal Pauli weights, and the
  // complete-positivity flag flipping exactly where the memory function
  // crosses -1/3.
  {
    bool pass = true;
    std::string detail_msg = "sum exact, flag consistent";
    for (double mu : {2.0, 3.0, 5.0}) {
      for (double nu : detail::uniform_grid(0.0, 10.0, 41)) {
        const DepolProbs probs = depol_probs(nu, mu);
        const double sum = probs.p[0] + (probs.p[1] + probs.p[2] + probs.p[3]);
        if (sum != 1.0 || probs.p[1] != probs.p[2] || probs.p[1] != probs.p[3]) {
          pass = false;
          detail_msg = "weight bookkeeping broke at mu=" + format_double(mu) +
                       " nu=" + format_double(nu);
        }
        const bool cp_expected = depol_memory(nu, mu) >= -1.0 / 3.0 - 1e-12;
        if (probs.completely_positive != cp_expected) {
          pass = false;
          detail_msg = "CP flag mismatch at mu=" + format_double(mu) +
                       " nu=" + format_double(nu);
        }
      }
    }
    results.push_back(CheckResult{"depolarizing-weight-bookkeeping", pass,
                                  detail_msg});
  }

  // Markovian regimes accumulate nothing.
  {
    double worst = 0.0;
    worst = std::max(worst,
                     channel_report(ChannelSpec{DephasingParams{1.0, 1.0}}, 0.0,
                                    30.0, 150)
                         .n_lqfi);
    worst = std::max(worst,
                     channel_report(ChannelSpec{AmplitudeDampingParams{5.0, 1.0,
                                                                       0.0}},
                                    0.0, 25.0, 150)
                         .n_lqfi);
    const DensityMatrix rho0 = x_state(CorrelationTriple{0.6, 0.4, -0.2});
    const auto monotone_depol = [&](double nu) {
      return lqfi(depol_apply_with_memory(rho0, std::exp(-nu)));
    };
    worst = std::max(worst, non_markovianity(monotone_depol, 0.0, 10.0, 150).n);
    results.push_back(detail::bounded("markovian-null", worst, 1e-10));
  }

  // Reference points with pencil-and-paper values.
  {
    double worst = 0.0;
    const MeasurePair bell = measures(bell_phi_plus());
    worst = std::max(worst, std::abs(bell.lqfi - 1.0));
    worst = std::max(worst, std::abs(bell.lqu - 1.0));
    ComplexMatrix mixed(4);
    for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
    const MeasurePair center = measures(DensityMatrix(mixed));
    worst = std::max(worst, std::abs(center.lqfi));
    worst = std::max(worst, std::abs(center.lqu));
    const MeasurePair def = measures(x_state(CorrelationTriple{0.6, 0.4, -0.2}));
    worst = std::max(worst, std::abs(def.lqfi - 0.1625));
    worst = std::max(worst, std::abs(def.lqu - 0.0851750705));
    results.push_back(detail::bounded("reference-states", worst, 1e-9));
  }

  return results;
}

// ---------------------------------------------------------------------------
// oracle: the two expensive arbiters, plus the rejected-coefficient control.

inline std::vector<CheckResult> run_oracle_checks(std::uint64_t seed,
                                                  int n_states) {
  using namespace backflow;
  std::vector<CheckResult> results;

  // Sphere search vs eigenvalue formulas on seeded random states.
  {
    double worst = 0.0;
    for (int k = 0; k < n_states; ++k) {
      const DensityMatrix rho = random_state(seed + static_cast<std::uint64_t>(k));
      const EigenSystem es = rho.eig();
      worst = std::max(worst, std::abs(lqfi_from_eig(es) -
                                       brute_force_min(rho, MinKernel::qfi).value));
      worst = std::max(worst, std::abs(lqu_from_eig(es) -
                                       brute_force_min(rho, MinKernel::skew).value));
    }
    results.push_back(detail::bounded(
        "sphere-search-vs-eigenvalue (" + std::to_string(n_states) + " states)",
        worst, 1e-5));
  }

  // Closed-form amplitude vs history integration across the full window for
  // the parameter sets the figures use.
  {
    struct Case { double lambda, delta; };
    const Case cases[] = {{0.3, 0.0}, {2.0, 0.0}, {5.0, 0.0}, {1.0, 0.5}};
    double worst = 0.0;
    for (const Case& c : cases) {
      const AmplitudeDampingParams p{c.lambda, 1.0, c.delta};
      const double scale = std::max({p.lambda, p.gamma0, std::abs(p.delta)});
      const double dt = 0.5e-3 / scale;
      const AmplitudeTrajectory traj = ad_amplitude_oracle(25.0, p, dt);
      for (std::size_t i = 0; i < traj.times.size(); ++i)
        worst = std::max(worst, std::abs(traj.values[i] -
                                         ad_amplitude(traj.times[i], p)));
    }
    results.push_back(detail::bounded("amplitude-closed-vs-history", worst, 1e-5));
  }

  // Negative control: the same exponential pair with sinh coefficient
  // (lambda - i delta)/2 instead of (lambda - i delta)/Omega. The history
  // integration must reject it decisively, otherwise the oracle has no
  // resolving power.
  {
    const AmplitudeDampingParams p{0.3, 1.0, 0.0};
    const Complex z(p.lambda, -p.delta);
    const Complex w = std::sqrt(z * z - 2.0 * p.gamma0 * p.lambda);
    const auto variant = [&](double t) {
      return std::exp(-0.5 * z * t) *
             (std::cosh(0.5 * w * t) + 0.5 * z * std::sinh(0.5 * w * t));
    };
    const AmplitudeTrajectory traj = ad_amplitude_oracle(25.0, p, 1e-3);
    double dev = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      dev = std::max(dev, std::abs(traj.values[i] - variant(traj.times[i])));
    CheckResult r;
    r.name = "halved-sinh-coefficient-rejected";
    r.pass = dev > 1e-2;
    r.detail = "variant deviates by " + format_double(dev) +
               " (must exceed 0.01)";
    results.push_back(r);
  }

  return results;
}

// Prints one PASS/FAIL line per check; returns the process exit code.
inline int report_checks(const std::vector<CheckResult>& checks) {
  bool all_pass = true;
  for (const CheckResult& c : checks) {
    std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    all_pass = all_pass && c.pass;
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "CHECKS FAILED");
  return all_pass ? 0 : 3;
}

}  // namespace cli

#endif  // BACKFLOW_TOOLS_CHECKS_HPP
