// Copyright 2026 The excitonfb Authors
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

// errors.hpp: exception types shared by the simulator modules.

#pragma once

#include <stdexcept>
#include <string>

namespace excitonfb {

// Liouvillian null space is not one-dimensional.
class DegenerateSteadyState : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// Steady-state residual, Hermiticity or positivity check exceeded tolerance.
class ConvergenceError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// A quantity that must be real (or of fixed sign) is not.
class NumericalInconsistency : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace excitonfb
