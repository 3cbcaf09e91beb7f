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

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "backflow/channels.hpp"
#include "backflow/measures.hpp"
#include "test_util.hpp"

using namespace backflow;
using Catch::Matchers::WithinAbs;

TEST_CASE("dephasing rate", "[channels]") {
  SECTION("vanishes at t = 0 and rejects bad parameters") {
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
      CHECK_THAT(dephasing_rate(0.0, {s, 1.0}), WithinAbs(0.0, 1e-15));
    }
    CHECK_THROWS_AS(dephasing_rate(1.0, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(dephasing_rate(1.0, {1.0, -2.0}), std::invalid_argument);
  }

  SECTION("ohmic exponent has the elementary closed form") {
    // s = 1: gamma(t) = omega_c^2 t / (1 + (omega_c t)^2).
    CHECK_THAT(dephasing_rate(1.0, {1.0, 1.0}), WithinAbs(0.5, 1e-12));
    const DephasingParams p{1.0, 2.0};
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.25 * i;
      const double x = p.omega_c * t;
      CHECK_THAT(dephasing_rate(t, p),
                 WithinAbs(p.omega_c * x / (1.0 + x * x), 1e-12));
    }
  }

  SECTION("super-ohmic rate turns negative past omega_c t = 1") {
    const DephasingParams p{4.0, 1.0};
    CHECK(dephasing_rate(0.99, p) > 0.0);
    CHECK(dephasing_rate(1.01, p) < 0.0);
    double min_rate = 0.0;
    for (int i = 0; i <= 2000; ++i)
      min_rate = std::min(min_rate, dephasing_rate(0.01 * i, p));
    CHECK(min_rate < -0.05);
  }
}

TEST_CASE("dephasing decoherence integral", "[channels]") {
  SECTION("quadrature agrees with the closed form") {
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
      const DephasingParams p{s, 1.0};
      for (double t : {0.0, 0.3, 1.0, 5.0, 20.0}) {
        CHECK_THAT(dephasing_decoherence(t, p),
                   WithinAbs(dephasing_decoherence_closed(t, p), 1e-9));
      }
    }
    // Non-unit cutoff.
    const DephasingParams p{2.5, 3.0};
    CHECK_THAT(dephasing_decoherence(2.0, p),
               WithinAbs(dephasing_decoherence_closed(2.0, p), 1e-9));
  }

  SECTION("frozen reference values") {
    CHECK_THAT(dephasing_decoherence_closed(1.0, {1.0, 1.0}),
               WithinAbs(0.5 * std::log(2.0), 1e-12));
    CHECK_THAT(dephasing_decoherence_closed(1.0, {4.0, 1.0}),
               WithinAbs(2.5, 1e-12));
  }
}

TEST_CASE("dephasing coherence factor", "[channels]") {
  for (double s : {0.5, 1.0, 2.0, 4.0})
    CHECK_THAT(dephasing_coherence(0.0, {s, 1.0}), WithinAbs(1.0, 0.0));

  // s = 1: P(t) = 1 / (1 + (omega_c t)^2).
  const DephasingParams ohmic{1.0, 1.0};
  CHECK_THAT(dephasing_coherence(1.0, ohmic), WithinAbs(0.5, 1e-10));
  for (double t : {0.5, 2.0, 7.0})
    CHECK_THAT(dephasing_coherence(t, ohmic),
               WithinAbs(1.0 / (1.0 + t * t), 1e-10));

  // P(1) = e^{-5} for s = 4.
  CHECK_THAT(dephasing_coherence(1.0, {4.0, 1.0}),
             WithinAbs(std::exp(-5.0), 1e-10));

  // An absurdly remote endpoint starves the quadrature and must be reported,
  // not silently mangled.
  CHECK_THROWS_AS(dephasing_coherence(1e60, {0.5, 1.0}), QuadratureFailure);
}

TEST_CASE("dephasing state", "[channels]") {
  const DephasingParams p{1.0, 1.0};
  CHECK(testutil::mat_gap(dephasing_state(0.0, p).matrix(),
                          bell_phi_plus().matrix()) < 1e-12);

  const auto rho = dephasing_state(1.0, p);
  CHECK_THAT(rho.matrix()(0, 3).real(), WithinAbs(0.25, 1e-10));
  CHECK_THAT(rho.matrix()(1, 1).real(), WithinAbs(0.0, 0.0));

  // Spectrum {(1 + P)/2, (1 - P)/2, 0, 0}.
  const auto& ev = rho.eig().values;
  CHECK_THAT(ev[0], WithinAbs(0.75, 1e-10));
  CHECK_THAT(ev[1], WithinAbs(0.25, 1e-10));
  CHECK_THAT(ev[2], WithinAbs(0.0, 1e-12));
  CHECK_THAT(ev[3], WithinAbs(0.0, 1e-12));
}

TEST_CASE("dephasing lqfi equals the squared coherence", "[channels]") {
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    const DephasingParams p{s, 1.0};
    for (int i = 0; i <= 12; ++i) {
      const double t = 30.0 * i / 12.0;
      const double coh = dephasing_coherence(t, p);
      CHECK_THAT(lqfi(dephasing_state(t, p)), WithinAbs(coh * coh, 1e-8));
    }
  }
}

TEST_CASE("ohmic dephasing is markovian along the whole trajectory",
          "[channels]") {
  const DephasingParams p{1.0, 1.0};
  double prev = 1.0;
  for (int i = 1; i <= 100; ++i) {
    const double q = lqfi(dephasing_state(0.3 * i, p));
    CHECK(q <= prev + 1e-10);
    prev = q;
  }
}

TEST_CASE("amplitude damping closed form", "[channels]") {
  SECTION("initial conditions and parameter validation") {
    for (double ratio : {0.3, 2.0, 5.0}) {
      const AmplitudeDampingParams p{ratio, 1.0, 0.0};
      CHECK_THAT(std::abs(ad_amplitude(0.0, p) - 1.0), WithinAbs(0.0, 0.0));
      // R'(0) = 0: the amplitude starts flat, R(h) = 1 - O(h^2).
      CHECK(std::abs(ad_amplitude(1e-6, p) - 1.0) < 1e-11);
    }
    CHECK_THROWS_AS(ad_amplitude(1.0, {0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ad_amplitude(1.0, {1.0, -1.0, 0.0}), std::invalid_argument);
  }

  SECTION("critically damped point lambda = 2 gamma0") {
    const AmplitudeDampingParams p{2.0, 1.0, 0.0};
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      CHECK_THAT(std::abs(ad_amplitude(t, p) - std::exp(-t) * (1.0 + t)),
                 WithinAbs(0.0, 1e-12));
    }
    CHECK_THAT(ad_amplitude(1.0, p).real(), WithinAbs(0.7357588823, 1e-10));
  }

  SECTION("oscillatory regime has zeros and revivals") {
    const AmplitudeDampingParams p{0.3, 1.0, 0.0};
    CHECK(std::abs(ad_amplitude(5.5129, p)) < 1e-4);
    CHECK(std::abs(ad_amplitude(8.798, p)) > 0.2);
    CHECK(std::abs(ad_amplitude(14.3111, p)) < 1e-4);
  }

  SECTION("strongly damped regime is monotone") {
    const AmplitudeDampingParams p{5.0, 1.0, 0.0};
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
      const double a = std::abs(ad_amplitude(0.25 * i, p));
      CHECK(a <= prev + 1e-12);
      prev = a;
    }
  }

  SECTION("amplitude is bounded by one everywhere") {
    for (double delta : {0.0, 0.5, 2.0}) {
      for (double lambda : {0.3, 1.0, 5.0}) {
        const AmplitudeDampingParams p{lambda, 1.0, delta};
        for (int i = 0; i <= 250; ++i)
          CHECK(std::abs(ad_amplitude(0.1 * i, p)) <= 1.0 + 1e-12);
      }
    }
  }

  SECTION("value does not depend on the square root branch") {
    // R(t) = e^{-zt/2} [cosh(wt/2) + (z/w) sinh(wt/2)] is even in w; the
    // exponential-pair form must inherit that.
    const AmplitudeDampingParams p{0.3, 1.0, 0.7};
    const Complex z(p.lambda, -p.delta);
    const Complex w = std::sqrt(z * z - 2.0 * p.gamma0 * p.lambda);
    const auto pair_form = [&](Complex root, double t) {
      return 0.5 * (1.0 + z / root) * std::exp(0.5 * (root - z) * t) +
             0.5 * (1.0 - z / root) * std::exp(-0.5 * (root + z) * t);
    };
    for (double t : {0.5, 2.0, 9.0}) {
      CHECK_THAT(std::abs(pair_form(w, t) - pair_form(-w, t)),
                 WithinAbs(0.0, 1e-12));
      CHECK_THAT(std::abs(ad_amplitude(t, p) - pair_form(w, t)),
                 WithinAbs(0.0, 1e-13));
    }
  }
}

TEST_CASE("amplitude damping memory-kernel oracle", "[channels]") {
  SECTION("step control") {
    const AmplitudeDampingParams p{2.0, 1.0, 0.0};
    CHECK_THROWS_AS(ad_amplitude_oracle(1.0, p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ad_amplitude_oracle(1.0, p, 1e-2), StepTooLarge);
    CHECK_NOTHROW(ad_amplitude_oracle(0.1, p, 4e-4));
  }

  SECTION("critically damped reference point") {
    const AmplitudeDampingParams p{2.0, 1.0, 0.0};
    const auto traj = ad_amplitude_oracle(1.0, p, 5e-4);
    REQUIRE(traj.times.size() == traj.values.size());
    CHECK_THAT(std::abs(traj.values.front() - 1.0), WithinAbs(0.0, 0.0));
    // R(t) starts flat: the first step moves by O(dt^2) only.
    CHECK(std::abs(traj.values[1] - 1.0) < 1e-6);
    CHECK_THAT(std::abs(traj.values.back()), WithinAbs(0.7357589, 1e-5));
  }

  SECTION("tracks the closed form uniformly in the oscillatory regime") {
    const AmplitudeDampingParams p{0.3, 1.0, 0.0};
    const auto traj = ad_amplitude_oracle(12.5, p, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      worst = std::max(worst,
                       std::abs(traj.values[i] - ad_amplitude(traj.times[i], p)));
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("amplitude damping state", "[channels]") {
  const AmplitudeDampingParams p{2.0, 1.0, 0.0};
  CHECK(testutil::mat_gap(ad_state(0.0, p).matrix(),
                          bell_phi_plus().matrix()) < 1e-12);

  // At t = 1, |R|^2 = 4 e^{-2}: populations (1/2, 0, (1-|R|^2)/2, |R|^2/2)
  // and coherence <00|rho|11> = conj(R)/2 = e^{-1}.
  const auto rho = ad_state(1.0, p);
  const auto& m = rho.matrix();
  const double x = 4.0 * std::exp(-2.0);
  CHECK_THAT(m(0, 0).real(), WithinAbs(0.5, 0.0));
  CHECK_THAT(m(1, 1).real(), WithinAbs(0.0, 0.0));
  CHECK_THAT(m(2, 2).real(), WithinAbs(0.5 * (1.0 - x), 1e-14));
  CHECK_THAT(m(3, 3).real(), WithinAbs(0.5 * x, 1e-14));
  CHECK_THAT(m(0, 3).real(), WithinAbs(std::exp(-1.0), 1e-14));
  CHECK_THAT(m.trace().real(), WithinAbs(1.0, 1e-15));

  CHECK_THAT(lqfi(rho), WithinAbs(0.5413411329, 1e-9));
}

TEST_CASE("amplitude damping lqfi equals the squared amplitude", "[channels]") {
  for (double ratio : {0.3, 2.0, 5.0}) {
    const AmplitudeDampingParams p{ratio, 1.0, 0.0};
    for (int i = 0; i <= 12; ++i) {
      const double t = 25.0 * i / 12.0;
      const double x = std::norm(ad_amplitude(t, p));
      CHECK_THAT(lqfi(ad_state(t, p)), WithinAbs(x, 1e-8));
    }
  }
}

TEST_CASE("depolarizing memory function", "[channels]") {
  CHECK_THAT(depol_memory(0.0, 3.0), WithinAbs(1.0, 0.0));
  CHECK_THROWS_AS(depol_memory(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(depol_memory_deriv(1.0, -1.0), std::invalid_argument);

  // At nu = pi/mu the oscillation hits its first trough, Upsilon = -e^{-pi/mu}.
  for (double mu : {2.0, 3.0, 5.0}) {
    CHECK_THAT(depol_memory(std::numbers::pi / mu, mu),
               WithinAbs(-std::exp(-std::numbers::pi / mu), 1e-12));
  }
  CHECK_THAT(depol_memory(std::numbers::pi / 3.0, 3.0),
             WithinAbs(-0.3509198072, 1e-9));

  SECTION("bounded by one in magnitude") {
    for (double mu : {0.5, 2.0, 3.0, 5.0})
      for (int i = 0; i <= 400; ++i)
        CHECK(std::abs(depol_memory(0.05 * i, mu)) <= 1.0 + 1e-12);
  }

  SECTION("derivative matches a finite difference") {
    for (double mu : {2.0, 5.0}) {
      for (double nu : {0.2, 1.0, 2.7}) {
        const double h = 1e-6;
        const double fd =
            (depol_memory(nu + h, mu) - depol_memory(nu - h, mu)) / (2.0 * h);
        CHECK_THAT(depol_memory_deriv(nu, mu), WithinAbs(fd, 1e-7));
      }
    }
    CHECK_THAT(depol_memory_deriv(0.0, 2.0), WithinAbs(0.0, 0.0));
  }
}

TEST_CASE("depolarizing mixing weights", "[channels]") {
  SECTION("start as the identity channel") {
    const auto probs = depol_probs(0.0, 3.0);
    CHECK(probs.p[0] == 1.0);
    CHECK(probs.p[1] == 0.0);
    CHECK(probs.completely_positive);
  }

  SECTION("sum to one exactly") {
    for (double mu : {2.0, 3.0, 5.0}) {
      for (int i = 0; i <= 100; ++i) {
        const auto probs = depol_probs(0.1 * i, mu);
        CHECK(probs.p[0] + (probs.p[1] + probs.p[2] + probs.p[3]) == 1.0);
        CHECK(probs.p[1] == probs.p[2]);
        CHECK(probs.p[2] == probs.p[3]);
      }
    }
  }

  SECTION("positivity boundary sits at Upsilon = -1/3") {
    const auto edge = depol_probs_from_memory(-1.0 / 3.0);
    CHECK_THAT(edge.p[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(edge.p[1], WithinAbs(1.0 / 3.0, 1e-15));
    CHECK(edge.completely_positive);
    CHECK_FALSE(depol_probs_from_memory(-0.34).completely_positive);
  }

  SECTION("fast memory oscillation leaves the positive cone") {
    // mu = 3 exceeds pi/ln 3, so the first trough dips below -1/3.
    CHECK_FALSE(depol_probs(std::numbers::pi / 3.0, 3.0).completely_positive);
    // mu = 2 stays inside for all times.
    for (int i = 0; i <= 200; ++i)
      CHECK(depol_probs(0.05 * i, 2.0).completely_positive);
  }
}

TEST_CASE("depolarizing kraus operators", "[channels]") {
  SECTION("complete inside the positive cone") {
    for (double nu : {0.0, 0.4, 1.5, 6.0}) {
      const auto k = depol_kraus(nu, 2.0);
      ComplexMatrix sum(2);
      for (const auto& op : k) sum += op.adjoint() * op;
      CHECK(testutil::mat_gap(sum, ComplexMatrix::identity(2)) < 1e-15);
    }
  }

  SECTION("refused outside it") {
    CHECK_THROWS_AS(depol_kraus(std::numbers::pi / 3.0, 3.0),
                    NotCompletelyPositive);
  }
}

TEST_CASE("depolarizing channel application", "[channels]") {
  const CorrelationTriple def{0.6, 0.4, -0.2};

  SECTION("identity at nu = 0, uniform mixing fixed point") {
    const auto rho0 = x_state(def);
    CHECK(testutil::mat_gap(depol_apply(rho0, 0.0, 3.0).matrix(),
                            rho0.matrix()) < 1e-15);
    const auto mixed = x_state(CorrelationTriple{0.0, 0.0, 0.0});
    CHECK(testutil::mat_gap(depol_apply(mixed, 1.3, 3.0).matrix(),
                            mixed.matrix()) < 1e-15);
  }

  SECTION("preserves the x-shaped zero pattern") {
    const auto rho = depol_apply(x_state(def), 0.7, 5.0);
    const auto& m = rho.matrix();
    const std::array<std::pair<int, int>, 8> off_pattern{
        {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
    for (const auto& [i, j] : off_pattern)
      CHECK_THAT(std::abs(m(i, j)), WithinAbs(0.0, 1e-15));
  }

  SECTION("conjugation route matches the closed form, including outside the "
          "positive cone") {
    for (double mu : {2.0, 3.0, 5.0}) {
      const DepolarizingParams p{mu, def};
      for (int i = 0; i <= 40; ++i) {
        const double nu = 0.25 * i;
        CHECK(testutil::mat_gap(depol_apply(x_state(def), nu, mu).matrix(),
                                depol_state_closed(nu, p).matrix()) < 1e-10);
      }
    }
  }

  SECTION("closed-form correlations contract by the squared memory") {
    const DepolarizingParams p{3.0, def};
    for (double nu : {0.3, 1.1, 2.0}) {
      const double u2 = std::pow(depol_memory(nu, 3.0), 2);
      const auto rho = depol_state_closed(nu, p);
      const auto& m = rho.matrix();
      CHECK_THAT(m(0, 3).real(), WithinAbs(0.25 * (0.6 - 0.4) * u2, 1e-14));
      CHECK_THAT(m(1, 2).real(), WithinAbs(0.25 * (0.6 + 0.4) * u2, 1e-14));
      CHECK_THAT(m(0, 0).real(), WithinAbs(0.25 * (1.0 - 0.2 * u2), 1e-14));
    }
    // Correlations scaled by 1/4 give the frozen off-diagonal 0.0125.
    const auto quarter = x_state(CorrelationTriple{0.15, 0.1, -0.05});
    CHECK_THAT(quarter.matrix()(0, 3).real(), WithinAbs(0.0125, 1e-15));
  }
}

TEST_CASE("closed-form fisher matrix for bell-diagonal states", "[channels]") {
  SECTION("matches the spectral route") {
    // Spot values for (0.5, 0.4, -0.3): theta = 0.38, S = (1 - theta)
    // componentwise over (1 - c_i^2).
    const CorrelationTriple c{0.5, 0.4, -0.3};
    const auto closed = bell_diag_s_closed(c);
    CHECK_THAT(closed(0, 0), WithinAbs(0.62 / 0.75, 1e-12));
    CHECK_THAT(closed(1, 1), WithinAbs(0.62 / 0.84, 1e-12));
    CHECK_THAT(closed(2, 2), WithinAbs(0.62 / 0.91, 1e-12));

    const auto spectral = s_matrix(x_state(c));
    for (int i = 0; i < 3; ++i)
      CHECK_THAT(closed(i, i), WithinAbs(spectral(i, i), 1e-9));
  }

  SECTION("random physical triples") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int tested = 0;
    while (tested < 25) {
      double a = u(gen), b = u(gen), c = u(gen);
      if (std::abs(a) < std::abs(b)) std::swap(a, b);
      if (!CorrelationTriple::is_physical(a, b, c)) continue;
      if (std::max({std::abs(a), std::abs(b), std::abs(c)}) > 0.95) continue;
      ++tested;
      const CorrelationTriple triple{a, b, c};
      const auto closed = bell_diag_s_closed(triple);
      const auto spectral = s_matrix(x_state(triple));
      for (int i = 0; i < 3; ++i)
        CHECK_THAT(closed(i, i), WithinAbs(spectral(i, i), 1e-9));
    }
  }

  SECTION("pure bell points are out of range") {
    CHECK_THROWS_AS(bell_diag_s_closed(CorrelationTriple{1.0, -1.0, 1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("channel front end", "[channels]") {
  const ChannelSpec dephasing{DephasingParams{4.0, 1.0}};
  const ChannelSpec amplitude{AmplitudeDampingParams{2.0, 1.0, 0.0}};
  const ChannelSpec depol{DepolarizingParams{3.0, {0.6, 0.4, -0.2}}};

  CHECK(testutil::mat_gap(initial_state(dephasing).matrix(),
                          bell_phi_plus().matrix()) < 1e-15);
  CHECK(testutil::mat_gap(initial_state(amplitude).matrix(),
                          bell_phi_plus().matrix()) < 1e-15);
  CHECK(testutil::mat_gap(initial_state(depol).matrix(),
                          x_state(CorrelationTriple{0.6, 0.4, -0.2}).matrix()) <
        1e-15);

  CHECK_THAT(lqfi(evolve(amplitude, 1.0)), WithinAbs(0.5413411329, 1e-8));
  CHECK(testutil::mat_gap(evolve(dephasing, 0.0).matrix(),
                          initial_state(dephasing).matrix()) < 1e-12);
  CHECK(testutil::mat_gap(evolve(depol, 0.0).matrix(),
                          initial_state(depol).matrix()) < 1e-15);

  CHECK_THAT(default_window_end(dephasing), WithinAbs(30.0, 0.0));
  CHECK_THAT(default_window_end(amplitude), WithinAbs(25.0, 0.0));
  CHECK_THAT(default_window_end(depol), WithinAbs(10.0, 0.0));

  // Evolved states stay physical across all families; the DensityMatrix
  // constructor revalidates every one.
  for (int i = 0; i <= 20; ++i) {
    CHECK_NOTHROW(evolve(dephasing, 1.5 * i));
    CHECK_NOTHROW(evolve(amplitude, 1.25 * i));
    CHECK_NOTHROW(evolve(depol, 0.5 * i));
  }
}
