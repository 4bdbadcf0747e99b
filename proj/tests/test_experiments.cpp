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

#include <cmath>
#include <stdexcept>

#include "excitonfb/errors.hpp"
#include "excitonfb/experiments.hpp"

using namespace excitonfb;

TEST_CASE("parameter names") {
    for (SweepParameter p : {SweepParameter::OmegaRabi, SweepParameter::NMolecules, SweepParameter::Lambda,
                             SweepParameter::Eta, SweepParameter::FeedbackTarget, SweepParameter::DisorderQ}) {
        CHECK(parse_parameter(parameter_name(p)) == p);
    }
    CHECK(parameter_unit(SweepParameter::OmegaRabi) == "eV");
    CHECK(parameter_unit(SweepParameter::Lambda) == "1");
    CHECK_THROWS_AS(parse_parameter("omega"), std::invalid_argument);
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.base = make_chain_model(3, 0.5);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);  // empty grid
    spec.grid = {0.1, 0.1};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.grid = {0.3, 0.2, 0.4};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.grid = {0.4, 0.2};
    CHECK_NOTHROW(spec.validate());  // decreasing is monotone
    spec.ensemble = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.ensemble = 1;
    spec.parameter = SweepParameter::NMolecules;
    spec.grid = {2.0, 3.5};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("single point sweep equals a direct evaluation") {
    SweepSpec spec;
    spec.base = make_chain_model(6, 0.4);
    spec.grid = {0.7};
    spec.channels = {Channel::Full, Channel::WeakCoupling, Channel::NoHopping};
    const SweepTable t = run_sweep(spec);
    const auto direct = channel_conductances(with_rabi(spec.base, 0.7), spec.channels);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(t.rows[i].channel == spec.channels[i]);
        CHECK(t.rows[i].stat.mean == direct[i].sigma_e);
        CHECK(t.rows[i].stat.count == 1);
        CHECK(t.rows[i].stat.std_error == 0.0);
        CHECK(t.rows[i].ok());
    }
}

TEST_CASE("sweep point models") {
    SweepSpec spec;
    spec.base = make_chain_model(4, 0.5);
    spec.base.feedback.enabled = true;

    spec.parameter = SweepParameter::NMolecules;
    const ChainModel n7 = sweep_point_model(spec, 7.0, 0);
    CHECK(n7.n_molecules == 7);
    CHECK(collective_rabi(n7.g) == doctest::Approx(0.5));

    spec.parameter = SweepParameter::Lambda;
    CHECK(sweep_point_model(spec, 0.3, 0).feedback.lambda == 0.3);
    spec.parameter = SweepParameter::Eta;
    CHECK(sweep_point_model(spec, 0.6, 0).feedback.eta == 0.6);
    spec.parameter = SweepParameter::FeedbackTarget;
    CHECK(sweep_point_model(spec, 2.0, 0).feedback_target() == 2);

    spec.parameter = SweepParameter::DisorderQ;
    spec.disorder.enabled = true;
    spec.seed = 99;
    const ChainModel a = sweep_point_model(spec, 0.2, 0);
    const ChainModel b = sweep_point_model(spec, 0.2, 1);
    CHECK(a.omega_molecule != b.omega_molecule);
    CHECK(a.omega_molecule == sweep_point_model(spec, 0.2, 0).omega_molecule);
    CHECK(a.omega_molecule.front() == spec.base.omega_reference);
    CHECK(a.omega_molecule.back() == spec.base.omega_reference);
    CHECK(member_seed(99, 0) != member_seed(99, 1));
    CHECK(member_seed(99, 0) != member_seed(100, 0));
}

TEST_CASE("ensemble statistics") {
    SweepSpec spec;
    spec.base = make_chain_model(5, 0.5);
    spec.grid = {0.5};
    spec.channels = {Channel::WeakCoupling};
    spec.ensemble = 6;
    spec.seed = 17;
    spec.disorder = {.enabled = true, .q = 0.05, .fix_ends = true};
    const SweepTable t = run_sweep(spec);
    REQUIRE(t.rows.size() == 1);

    std::vector<double> values;
    for (std::size_t k = 0; k < 6; ++k) {
        ChainModel m = sweep_point_model(spec, 0.5, k);
        values.push_back(conductance(m, Channel::WeakCoupling).sigma_e);
    }
    double mean = 0.0;
    for (double v : values) mean += v / 6.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / 5.0) / std::sqrt(6.0);
    CHECK(t.rows[0].stat.count == 6);
    CHECK(t.rows[0].stat.mean == doctest::Approx(mean).epsilon(1e-13));
    CHECK(t.rows[0].stat.std_error == doctest::Approx(se).epsilon(1e-10));
}

TEST_CASE("clean disorder reproduces the clean chain") {
    const ChainModel m = make_chain_model(5, 0.5);
    const std::vector<double> grid = {0.2, 1.0};
    const SweepTable t = disorder_study(m, 0.0, 4, 3, grid);
    for (const SweepRow& r : t.rows) {
        CHECK(r.stat.std_error == 0.0);
        CHECK(r.stat.mean == conductance(with_rabi(m, r.x), r.channel).sigma_e);
    }
    CHECK_THROWS_AS(disorder_study(m, -0.1, 4, 3, grid), std::invalid_argument);
}

TEST_CASE("seeded sweeps are deterministic") {
    SweepSpec spec;
    spec.base = make_chain_model(6, 0.5);
    spec.grid = linspace(0.0, 1.0, 5);
    spec.channels = {Channel::Full, Channel::NoHopping};
    spec.ensemble = 3;
    spec.seed = 5;
    spec.disorder = {.enabled = true, .q = 0.1, .fix_ends = true};
    spec.workers = 3;
    const SweepTable a = run_sweep(spec);
    spec.workers = 1;
    const SweepTable b = run_sweep(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].x == b.rows[i].x);
        CHECK(a.rows[i].channel == b.rows[i].channel);
        CHECK(a.rows[i].stat.mean == b.rows[i].stat.mean);
        CHECK(a.rows[i].stat.std_error == b.rows[i].stat.std_error);
    }
}

TEST_CASE("failed points become diagnostic rows") {
    SweepSpec spec;
    spec.base = make_chain_model(3, 0.5);
    spec.grid = {0.5, 1.0};
    spec.solver.residual_tol = -1.0;  // unattainable: every point fails
    const SweepTable t = run_sweep(spec);
    REQUIRE(t.rows.size() == 2);
    for (const SweepRow& r : t.rows) {
        CHECK_FALSE(r.ok());
        CHECK(std::isnan(r.stat.mean));
    }
}

TEST_CASE("lambda periodicity and eta endpoints") {
    ChainModel m = make_chain_model(8, 1.0);
    const double plain = conductance(m).sigma_e;
    m.feedback.enabled = true;
    for (double lambda : {0.2, 0.5}) {
        m.feedback.lambda = lambda;
        const double a = conductance(m).sigma_e;
        m.feedback.lambda = lambda + 1.0;
        CHECK(std::abs(conductance(m).sigma_e - a) / a < 1e-10);
    }
    m.feedback.lambda = 0.5;
    m.feedback.eta = 0.0;
    CHECK(std::abs(conductance(m).sigma_e - plain) / plain < 1e-12);
}

TEST_CASE("crossover search") {
    ChainModel m = make_chain_model(5, 1.0);
    CHECK_THROWS_AS(find_crossover(m, 5, 5, 1.0), NoCrossover);
    try {
        find_crossover(m, 5, 5, 1.0);
    } catch (const NoCrossover& e) {
        CHECK(e.curves().n.size() == 1);
        CHECK(e.curves().sigma_nh.size() == 1);
        CHECK(e.curves().sigma_wc.size() == 1);
    }

    const CrossoverResult r = find_crossover(m, 5, 40, 1.0);
    CHECK(r.n_star >= 10);
    CHECK(r.n_star <= 30);
    CHECK(r.sign_changes == 1);
    REQUIRE(r.n.size() == 36);
    // Both curves decrease with N; WC falls faster, so the crossing is unique.
    for (std::size_t i = 1; i < r.n.size(); ++i) {
        CHECK(r.sigma_nh[i] < r.sigma_nh[i - 1]);
        CHECK(r.sigma_wc[i] < r.sigma_wc[i - 1]);
    }
    const std::size_t k = r.n_star - 5;
    CHECK(r.sigma_nh[k] >= r.sigma_wc[k]);
    CHECK(r.sigma_nh[k - 1] < r.sigma_wc[k - 1]);
}

TEST_CASE("feedback study shapes") {
    ChainModel m = make_chain_model(6, 1.0);
    const std::vector<double> targets = {1, 3, 6};
    const std::vector<double> lambdas = linspace(0.0, 1.0, 5);
    const std::vector<double> etas = linspace(0.0, 1.0, 3);
    const FeedbackStudy s = feedback_study(m, targets, lambdas, etas);
    CHECK(s.by_target.rows.size() == 3);
    CHECK(s.by_lambda.rows.size() == 5);
    CHECK(s.by_eta.rows.size() == 3);
    CHECK(s.by_lambda.parameter == SweepParameter::Lambda);
    // lambda = 0 and lambda = 1 coincide with eta = 0: no feedback.
    CHECK(std::abs(s.by_lambda.rows.front().stat.mean - s.by_eta.rows.front().stat.mean) <
          1e-12 * s.by_eta.rows.front().stat.mean);
    CHECK(std::abs(s.by_lambda.rows.back().stat.mean - s.by_eta.rows.front().stat.mean) <
          1e-12 * s.by_eta.rows.front().stat.mean);
}

TEST_CASE("linspace") {
    const std::vector<double> g = linspace(0.0, 1.0, 11);
    REQUIRE(g.size() == 11);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[5] == 0.5);
    CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
    CHECK(linspace(2.0, 3.0, 0).empty());
}
