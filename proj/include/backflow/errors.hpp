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

#include <stdexcept>
#include <string>

namespace backflow {

// Thrown when a matrix expected to be Hermitian deviates beyond tolerance.
class NonHermitian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a matrix expected to be positive semidefinite has an
// eigenvalue below the rejection threshold.
class NotPSD : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Thrown when a state (or state parametrization) fails a physicality
// requirement: unit trace, positivity, or correlation-tetrahedron membership.
class Unphysical : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when adaptive quadrature cannot reach the requested tolerance
// within its evaluation budget.
class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a fixed-step integrator is asked to run with a step too
// coarse for its accuracy contract.
class StepTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a map that must be realized with genuine Kraus operators has
// a negative eigenvalue in its Choi spectrum.
class NotCompletelyPositive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace backflow
