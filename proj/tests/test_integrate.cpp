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

#include "backflow/errors.hpp"
#include "backflow/integrate.hpp"

using namespace backflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("adaptive simpson on smooth integrands", "[integrate]") {
  CHECK_THAT(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0),
             WithinAbs(1.0 / 3.0, 1e-12));
  CHECK_THAT(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi),
             WithinAbs(2.0, 1e-10));
  CHECK_THAT(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0),
             WithinRel(std::numbers::e - 1.0, 1e-10));
  // Long oscillatory domain with heavy cancellation: exact value is
  // (1 - cos(10 b)) / 10 with b = 20 pi + 0.3.
  const double b = 20.0 * std::numbers::pi + 0.3;
  CHECK_THAT(adaptive_simpson([](double x) { return std::sin(10.0 * x); }, 0.0, b),
             WithinAbs((1.0 - std::cos(3.0)) / 10.0, 1e-9));
}

TEST_CASE("adaptive simpson respects orientation and empty intervals", "[integrate]") {
  const auto f = [](double x) { return std::cos(x); };
  CHECK_THAT(adaptive_simpson(f, 0.0, 0.0), WithinAbs(0.0, 0.0));
  CHECK_THAT(adaptive_simpson(f, 1.0, 0.0), WithinAbs(-std::sin(1.0), 1e-10));
}

TEST_CASE("adaptive simpson rejects bad tolerances and hopeless integrands", "[integrate]") {
  const auto f = [](double x) { return x; };
  CHECK_THROWS_AS(adaptive_simpson(f, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adaptive_simpson(f, 0.0, 1.0, -1e-6), std::invalid_argument);

  // 1/x on (0, 1] keeps subdividing toward the endpoint until the evaluation
  // budget runs out.
  const auto diverging = [](double x) { return 1.0 / x; };
  CHECK_THROWS_AS(adaptive_simpson(diverging, 1e-300, 1.0), QuadratureFailure);
}

TEST_CASE("adaptive simpson handles sharply peaked integrands", "[integrate]") {
  // Narrow Gaussian: integral over [-1, 1] is essentially sqrt(pi) * width.
  const double w = 1e-3;
  const auto peak = [w](double x) { return std::exp(-(x / w) * (x / w)); };
  CHECK_THAT(adaptive_simpson(peak, -1.0, 1.0), WithinRel(std::sqrt(std::numbers::pi) * w, 1e-8));
}
