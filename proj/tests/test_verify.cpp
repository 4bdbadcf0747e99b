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

#include <doctest.h>

#include <algorithm>
#include <string>

#include "excitonfb/verify.hpp"

using namespace excitonfb;

namespace {

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& name) {
    const auto it = std::find_if(rs.begin(), rs.end(), [&](const CheckResult& r) { return r.name == name; });
    REQUIRE(it != rs.end());
    return *it;
}

// Dissipator with the anticommutator sign flipped: s rho s^+ + {s^+ s, rho}/2.
Superoperator flipped_sign(const OperatorMatrix& h, std::span<const JumpChannel> channels) {
    Superoperator l = build_liouvillian(h, channels);
    for (const JumpChannel& c : channels) {
        const OperatorMatrix n = c.op.adjoint() * c.op;
        l.mutable_entries() += c.rate * (left_multiplication(n) + right_multiplication(n));
    }
    return l;
}

}  // namespace

TEST_CASE("pristine build passes every check") {
    const std::vector<CheckResult> rs = run_verification();
    CHECK(rs.size() >= 11);
    for (const CheckResult& r : rs) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
        CHECK(r.seconds < 60.0);
    }
    for (const char* name : {"trace preservation", "hermiticity preservation",
                             "steady state vs propagation (N <= 3)", "eta = 0 reduces to the plain generator",
                             "feedback lambda in {0, 1} is a no-op", "linear regime in gamma_p",
                             "steady-state positivity", "feedback unitary is unitary", "generator is affine in eta",
                             "seeded sweeps are deterministic", "analytic two-level population"}) {
        CHECK_NOTHROW(find(rs, name));
    }
}

TEST_CASE("sign error in the dissipator is caught") {
    VerifyOptions options;
    options.builder = flipped_sign;
    const std::vector<CheckResult> rs = run_verification(options);
    CHECK_FALSE(find(rs, "trace preservation").passed);
    CHECK_FALSE(std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; }));
}

TEST_CASE("oracle configurations cover every channel switch") {
    const auto cs = oracle_configurations();
    CHECK(cs.size() == 12);
    bool no_pump = false, no_dephasing = false, with_cavity = false, without_cavity = false, fb = false;
    for (const OracleConfig& c : cs) {
        CHECK(c.n_molecules <= 3);
        no_pump |= !c.pump;
        no_dephasing |= !c.dephasing;
        with_cavity |= c.cavity;
        without_cavity |= !c.cavity;
        fb |= c.feedback;
    }
    CHECK(no_pump);
    CHECK(no_dephasing);
    CHECK(with_cavity);
    CHECK(without_cavity);
    CHECK(fb);
}
