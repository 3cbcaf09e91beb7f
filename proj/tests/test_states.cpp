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

#include <cmath>
#include <numbers>
#include <utility>

#include "backflow/errors.hpp"
#include "backflow/states.hpp"
#include "test_util.hpp"

using namespace backflow;
using Catch::Matchers::WithinAbs;

TEST_CASE("density matrix validation", "[states]") {
  CHECK_NOTHROW(DensityMatrix(bell_phi_plus().matrix()));

  SECTION("trace must be one") {
    auto m = ComplexMatrix::identity(4);
    CHECK_THROWS_AS(DensityMatrix(m), Unphysical);
  }

  SECTION("hermiticity is required") {
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 0.25;
    m(0, 1) = 0.1;  // no matching lower entry
    CHECK_THROWS_AS(DensityMatrix(m), NonHermitian);
  }

  SECTION("negative eigenvalues are rejected") {
    ComplexMatrix m(4);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(m), Unphysical);
  }

  SECTION("only two-qubit states are supported") {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    CHECK_THROWS_AS(DensityMatrix(m), std::invalid_argument);
  }
}

TEST_CASE("bell state structure", "[states]") {
  const auto bell = bell_phi_plus();
  const auto& m = bell.matrix();
  CHECK_THAT(m(0, 0).real(), WithinAbs(0.5, 0.0));
  CHECK_THAT(m(0, 3).real(), WithinAbs(0.5, 0.0));
  CHECK_THAT(m(3, 0).real(), WithinAbs(0.5, 0.0));
  CHECK_THAT(m(3, 3).real(), WithinAbs(0.5, 0.0));
  CHECK_THAT(std::abs(m(1, 1)) + std::abs(m(2, 2)), WithinAbs(0.0, 0.0));

  // Pure state: spectrum {1, 0, 0, 0}.
  const auto& eig = bell.eig();
  CHECK_THAT(eig.values[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(eig.values[1], WithinAbs(0.0, 1e-12));

  // The Bell state is the correlation triple (1, -1, 1).
  CHECK(testutil::mat_gap(m, x_state(CorrelationTriple{1.0, -1.0, 1.0}).matrix()) < 1e-15);
}

TEST_CASE("correlation triple validation and spectrum", "[states]") {
  const CorrelationTriple def{0.6, 0.4, -0.2};
  const auto spec = def.bell_spectrum();
  CHECK_THAT(spec[0], WithinAbs(0.25, 1e-15));
  CHECK_THAT(spec[1], WithinAbs(0.15, 1e-15));
  CHECK_THAT(spec[2], WithinAbs(0.55, 1e-15));
  CHECK_THAT(spec[3], WithinAbs(0.05, 1e-15));
  CHECK_THAT(spec[0] + spec[1] + spec[2] + spec[3], WithinAbs(1.0, 1e-15));

  // |c1| >= |c2| is part of the parameterization contract.
  CHECK_THROWS_AS(CorrelationTriple(0.4, 0.6, -0.2), std::invalid_argument);

  // A triple outside the tetrahedron of admissible correlations has a
  // negative spectral weight.
  CHECK_THROWS_AS(CorrelationTriple(0.9, 0.6, 0.3), Unphysical);
  CHECK_FALSE(CorrelationTriple::is_physical(0.9, 0.6, 0.3));
  CHECK(CorrelationTriple::is_physical(0.6, 0.4, -0.2));
  CHECK(CorrelationTriple::is_physical(1.0, -1.0, 1.0));
  CHECK(CorrelationTriple::is_physical(0.0, 0.0, 0.0));
}

TEST_CASE("x state matrix entries", "[states]") {
  const auto rho = x_state(CorrelationTriple{0.6, 0.4, -0.2});
  const auto& m = rho.matrix();

  CHECK_THAT(m(0, 0).real(), WithinAbs(0.2, 1e-15));
  CHECK_THAT(m(1, 1).real(), WithinAbs(0.3, 1e-15));
  CHECK_THAT(m(2, 2).real(), WithinAbs(0.3, 1e-15));
  CHECK_THAT(m(3, 3).real(), WithinAbs(0.2, 1e-15));
  CHECK_THAT(m(0, 3).real(), WithinAbs(0.05, 1e-15));
  CHECK_THAT(m(1, 2).real(), WithinAbs(0.25, 1e-15));
  CHECK_THAT(std::abs(m(0, 1)) + std::abs(m(0, 2)), WithinAbs(0.0, 0.0));

  // Spectrum in descending order matches the correlation-triple weights.
  const auto& eig = rho.eig();
  CHECK_THAT(eig.values[0], WithinAbs(0.55, 1e-12));
  CHECK_THAT(eig.values[1], WithinAbs(0.25, 1e-12));
  CHECK_THAT(eig.values[2], WithinAbs(0.15, 1e-12));
  CHECK_THAT(eig.values[3], WithinAbs(0.05, 1e-12));

  // Zero correlations give the maximally mixed state.
  const auto mixed = x_state(CorrelationTriple{0.0, 0.0, 0.0});
  CHECK(testutil::mat_gap(mixed.matrix(), Complex{0.25} * ComplexMatrix::identity(4)) < 1e-15);
}

TEST_CASE("random states are reproducible and physical", "[states]") {
  const auto a = random_state(7);
  const auto b = random_state(7);
  const auto c = random_state(8);

  CHECK(testutil::mat_gap(a.matrix(), b.matrix()) == 0.0);
  CHECK(testutil::mat_gap(a.matrix(), c.matrix()) > 1e-3);

  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto rho = random_state(seed);
    CHECK_THAT(rho.matrix().trace().real(), WithinAbs(1.0, 1e-12));
    // Ginibre construction is almost surely full rank.
    CHECK(rho.eig().values[3] > 0.0);
  }
}

TEST_CASE("bloch vectors normalize and build observables", "[states]") {
  const BlochVector n(0.0, 0.0, 2.0);
  CHECK_THAT(n.z, WithinAbs(1.0, 0.0));
  CHECK_THROWS_AS(BlochVector(0.0, 0.0, 0.0), std::invalid_argument);

  const auto diag = BlochVector::from_angles(std::numbers::pi / 2.0, std::numbers::pi / 4.0);
  CHECK_THAT(diag.x * diag.x + diag.y * diag.y + diag.z * diag.z, WithinAbs(1.0, 1e-14));
  CHECK_THAT(diag.x, WithinAbs(std::sqrt(0.5), 1e-14));
  CHECK_THAT(diag.y, WithinAbs(std::sqrt(0.5), 1e-14));

  // (n . sigma) (x) I is hermitian and squares to the identity.
  const auto obs = BlochVector(1.0, 2.0, -2.0).observable();
  CHECK(obs.hermiticity_error() < 1e-15);
  CHECK(testutil::mat_gap(obs * obs, ComplexMatrix::identity(4)) < 1e-14);

  // The right factor is untouched: z-observable is diag(1, 1, -1, -1).
  const auto zobs = BlochVector(0.0, 0.0, 1.0).observable();
  CHECK_THAT(zobs(0, 0).real(), WithinAbs(1.0, 0.0));
  CHECK_THAT(zobs(1, 1).real(), WithinAbs(1.0, 0.0));
  CHECK_THAT(zobs(2, 2).real(), WithinAbs(-1.0, 0.0));
  CHECK_THAT(zobs(3, 3).real(), WithinAbs(-1.0, 0.0));
}

TEST_CASE("symmetric 3x3 eigenvalues", "[states]") {
  SECTION("block diagonal example") {
    SymMatrix3 m;
    m(0, 0) = 2.0;
    m(1, 1) = 2.0;
    m(2, 2) = 5.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    const auto ev = m.eigenvalues();
    CHECK_THAT(ev[0], WithinAbs(5.0, 1e-13));
    CHECK_THAT(ev[1], WithinAbs(3.0, 1e-13));
    CHECK_THAT(ev[2], WithinAbs(1.0, 1e-13));
    CHECK_THAT(m.max_eigenvalue(), WithinAbs(5.0, 1e-13));
    CHECK_THAT(m.min_eigenvalue(), WithinAbs(1.0, 1e-13));
  }

  SECTION("diagonal fast path") {
    SymMatrix3 m;
    m(0, 0) = 0.3;
    m(1, 1) = -0.1;
    m(2, 2) = 0.7;
    const auto ev = m.eigenvalues();
    CHECK_THAT(ev[0], WithinAbs(0.7, 0.0));
    CHECK_THAT(ev[1], WithinAbs(0.3, 0.0));
    CHECK_THAT(ev[2], WithinAbs(-0.1, 0.0));
  }

  SECTION("fully degenerate") {
    SymMatrix3 m;
    for (int i = 0; i < 3; ++i) m(i, i) = 0.4;
    const auto ev = m.eigenvalues();
    CHECK_THAT(ev[0], WithinAbs(0.4, 1e-15));
    CHECK_THAT(ev[2], WithinAbs(0.4, 1e-15));
  }

  SECTION("full matrix against characteristic polynomial roots") {
    // [[2,1,1],[1,3,1],[1,1,4]]: roots of l^3 - 9 l^2 + 23 l - 17.
    SymMatrix3 m;
    m(0, 0) = 2.0;
    m(1, 1) = 3.0;
    m(2, 2) = 4.0;
    for (const auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      m(i, j) = 1.0;
      m(j, i) = 1.0;
    }
    const auto ev = m.eigenvalues();
    for (const double l : ev) {
      const double p = ((l - 9.0) * l + 23.0) * l - 17.0;
      CHECK_THAT(p, WithinAbs(0.0, 1e-10));
    }
    CHECK_THAT(ev[0] + ev[1] + ev[2], WithinAbs(9.0, 1e-12));
  }

  SECTION("quadratic form") {
    SymMatrix3 m;
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    m(2, 2) = 3.0;
    m(0, 2) = 0.5;
    m(2, 0) = 0.5;
    const BlochVector n(1.0, 0.0, 1.0);  // normalized to (1,0,1)/sqrt(2)
    // n^T m n = (1 + 3 + 2 * 0.5) / 2.
    CHECK_THAT(m.quad_form(n), WithinAbs(2.5, 1e-14));
  }
}
