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

#include <string>

#include "excitonfb/config.hpp"

using namespace excitonfb;

namespace {

ConfigError error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a ConfigError");
    return ConfigError("", "", 0);
}

}  // namespace

TEST_CASE("experiment kind is required") {
    const ConfigError e = error_of("");
    CHECK(e.key() == "experiment");
    CHECK(std::string(e.what()).find("experiment") != std::string::npos);
}

TEST_CASE("defaults are filled for absent keys") {
    const RunConfig c = parse_config("experiment = single_point\n");
    CHECK(c.experiment == ExperimentKind::SinglePoint);
    CHECK(c.model.omega_cavity == 2.11);
    CHECK(c.model.kappa == 0.1);
    CHECK(c.model.gamma_phi == 26.3e-3);
    CHECK(c.model.n_molecules == 10);
    CHECK(collective_rabi(c.model.g) == doctest::Approx(1.0));
    CHECK(c.omega_grid.size() == 21);
    CHECK(c.ensemble == 100);
    CHECK(c.disorder_q == 0.211);
    CHECK(c.lambda_grid.size() == 11);
    CHECK(c.eta_grid.size() == 5);
    CHECK(c.channels.size() == 3);
}

TEST_CASE("full document") {
    const RunConfig c = parse_config(R"(
# comment line
experiment = omega_sweep   # trailing comment
seed = 42
output_dir = "results"
plot = false
channels = full, nh
[model]
n_molecules = 12
omega_rabi = 0.8
spacing_nm = 5
kappa = 0.2
dipole_orientation = 1, 1, 0
[feedback]
enabled = true
lambda = 0.25
eta = 0.5
[omega_sweep]
grid = linspace(0.1, 0.9, 9)
n_series = 5, 10
)");
    CHECK(c.experiment == ExperimentKind::OmegaSweep);
    CHECK(c.seed == 42);
    CHECK(c.output_dir == "results");
    CHECK_FALSE(c.plot);
    CHECK(c.channels == std::vector{Channel::Full, Channel::NoHopping});
    CHECK(c.model.n_molecules == 12);
    CHECK(c.model.spacing_nm == 5.0);
    CHECK(c.model.kappa == 0.2);
    CHECK(c.model.dipole_orientation.norm() == doctest::Approx(1.0));
    CHECK(c.model.dipole_orientation.x() == doctest::Approx(c.model.dipole_orientation.y()));
    CHECK(c.model.feedback.enabled);
    CHECK(c.model.feedback.eta == 0.5);
    CHECK(c.omega_grid.size() == 9);
    CHECK(c.omega_grid.back() == doctest::Approx(0.9));
    CHECK(c.n_series == std::vector<double>{5, 10});
}

TEST_CASE("strict parsing names the offending key and line") {
    ConfigError e = error_of("experiment = crossover\n[model]\nkapa = 0.1\n");
    CHECK(e.key() == "model.kapa");
    CHECK(e.line() == 3);

    e = error_of("experiment = crossover\n[model]\nkappa = -0.1\n");
    CHECK(e.key() == "model.kappa");
    CHECK(e.line() == 3);

    e = error_of("experiment = crossover\n[model]\nkappa = fast\n");
    CHECK(e.key() == "model.kappa");

    e = error_of("experiment = crossover\nseed = 1\nseed = 2\n");
    CHECK(e.key() == "seed");
    CHECK(e.line() == 3);

    e = error_of("experiment = sideways\n");
    CHECK(e.key() == "experiment");

    e = error_of("experiment = feedback\n[feedback]\neta = 1.5\n");
    CHECK(e.key() == "feedback.eta");

    e = error_of("experiment = feedback\n[model]\nn_molecules = 4\n[feedback]\ntarget = 7\n");
    CHECK(e.key() == "feedback.target");
    CHECK(e.line() == 5);

    e = error_of("experiment = omega_sweep\n[omega_sweep]\ngrid = 0.5, 0.2\n");
    CHECK(e.key() == "omega_sweep.grid");

    e = error_of("experiment = omega_sweep\n[omega_sweep]\nn_series = 2.5\n");
    CHECK(e.key() == "omega_sweep.n_series");

    e = error_of("experiment = omega_sweep\n[nonsense]\nx = 1\n");
    CHECK(e.key() == "nonsense.x");

    e = error_of("experiment = omega_sweep\njust words\n");
    CHECK(e.line() == 2);

    e = error_of("experiment = omega_sweep\nchannels = full, xx\n");
    CHECK(e.key() == "channels");
}

TEST_CASE("described configuration") {
    const RunConfig c = parse_config("experiment = disorder\nseed = 3\n[disorder]\nq = 0.1\n");
    const auto d = describe(c);
    auto find = [&](const std::string& k) {
        for (const auto& [key, value] : d)
            if (key == k) return value;
        return std::string("<missing>");
    };
    CHECK(find("experiment") == "disorder");
    CHECK(find("seed") == "3");
    CHECK(find("disorder.q") == "0.10000000000000001");
    CHECK(find("model.kappa") == "0.10000000000000001");
    CHECK(find("model.spacing_nm") != "<missing>");
    CHECK(find("model.resolved_cavity_energy") != "<missing>");
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), ConfigError);
}
