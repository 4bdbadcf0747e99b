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

// verify.hpp: self-checks of the generator, solver and sweep machinery,
// run by `excitonfb verify`.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "excitonfb/dynamics.hpp"
#include "excitonfb/model.hpp"

namespace excitonfb {

using LiouvillianBuilder = std::function<Superoperator(const OperatorMatrix&, std::span<const JumpChannel>)>;

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    // Generator assembly under test; defaults to build_liouvillian.
    LiouvillianBuilder builder;
    std::uint64_t seed = 20240607;
};

// A small chain with individually switchable channels, used by the
// steady-state / propagation cross-check.
struct OracleConfig {
    std::string label;
    std::size_t n_molecules = 1;
    bool pump = true;
    bool decay = true;
    bool dephasing = false;
    bool cavity = false;
    bool hopping = false;
    bool feedback = false;
    double lambda = 0.5;
    double eta = 1.0;
    std::size_t target = 0;  // 0 = last molecule

    ChainModel model() const;
    std::vector<JumpChannel> channels() const;
    double min_rate() const;
};

std::vector<OracleConfig> oracle_configurations();

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace excitonfb
