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
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "excitonfb/output.hpp"

using namespace excitonfb;

namespace {

SweepRow row(std::string series, double x, Channel c, double y) {
    SweepRow r;
    r.series = std::move(series);
    r.x = x;
    r.channel = c;
    r.stat = {y, 0.0, 1};
    return r;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t i = hay.find(needle); i != std::string::npos; i = hay.find(needle, i + 1)) ++n;
    return n;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("empty table writes only the header") {
    SweepTable t;
    CHECK(format_csv(t) == "series,omega_rabi [eV],channel,sigma_e [eV],status\n");
    t.ensemble = 5;
    t.parameter = SweepParameter::NMolecules;
    CHECK(format_csv(t) ==
          "series,n_molecules [1],channel,sigma_e_mean [eV],sigma_e_stderr [eV],count,status\n");
}

TEST_CASE("single point has one row per channel") {
    SweepTable t;
    t.rows = {row("", 1.0, Channel::Full, 0.039), row("", 1.0, Channel::WeakCoupling, 0.12),
              row("", 1.0, Channel::NoHopping, 0.038)};
    const std::string csv = format_csv(t, {{"experiment", "single_point"}, {"seed", "0"}});
    CHECK(csv.rfind("# experiment = single_point\n# seed = 0\nseries,", 0) == 0);
    CHECK(count(csv, "\n") == 2 + 1 + 3);
    CHECK(csv.find(",1,full,0.039000000000000000,ok\n") == std::string::npos);  // %.17g, not fixed
    CHECK(csv.find(",1,full,0.039,ok\n") != std::string::npos);
}

TEST_CASE("CSV round trip is bit exact") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t ensemble : {1u, 7u}) {
        SweepTable t;
        t.parameter = SweepParameter::Eta;
        t.ensemble = ensemble;
        for (int i = 0; i < 50; ++i) {
            SweepRow r = row("s,1", 0.1 * i + u(rng) * 1e-3, Channel::NoHopping, std::ldexp(u(rng), -40 + i));
            r.stat.std_error = std::abs(u(rng)) * 1e-17;
            r.stat.count = ensemble;
            t.rows.push_back(r);
        }
        t.rows.push_back(row("s,1", 9.0, Channel::Full, std::numeric_limits<double>::denorm_min()));
        t.rows.back().stat.count = ensemble;
        t.rows.push_back(row("s,1", 10.0, Channel::Full, std::numeric_limits<double>::max()));
        t.rows.back().stat.count = ensemble;
        const SweepTable back = parse_csv(format_csv(t, {{"k", "v"}}));
        REQUIRE(back.rows.size() == t.rows.size());
        CHECK(back.parameter == t.parameter);
        CHECK(back.ensemble == ensemble);
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            CHECK(back.rows[i].x == t.rows[i].x);
            CHECK(back.rows[i].stat.mean == t.rows[i].stat.mean);
            CHECK(back.rows[i].channel == t.rows[i].channel);
            CHECK(back.rows[i].series == "s;1");
            if (ensemble > 1) CHECK(back.rows[i].stat.std_error == t.rows[i].stat.std_error);
        }
    }
}

TEST_CASE("CSV file I/O") {
    const auto dir = std::filesystem::temp_directory_path() / "excitonfb_output_test";
    std::filesystem::create_directories(dir);
    SweepTable t;
    t.rows = {row("a", 0.5, Channel::Full, 0.25)};
    write_csv(t, (dir / "t.csv").string());
    CHECK(read_csv((dir / "t.csv").string()).rows.at(0).stat.mean == 0.25);
    CHECK_THROWS_AS(write_csv(t, (dir / "missing" / "t.csv").string()), std::runtime_error);
    CHECK_THROWS_AS(read_csv((dir / "none.csv").string()), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("nonsense\n"), std::invalid_argument);
}

TEST_CASE("two-point series maps onto the frame corners") {
    SweepTable t;
    t.rows = {row("", 0.0, Channel::Full, 1.0), row("", 1.0, Channel::Full, 3.0)};
    PlotSpec spec;  // frame: x in [90, 550], y in [40, 420]
    const AxisMap map = plot_axes(t, spec);
    CHECK(map.px(0.0) == 90.0);
    CHECK(map.px(1.0) == 550.0);
    CHECK(map.py(1.0) == 420.0);
    CHECK(map.py(3.0) == 40.0);
    CHECK(map.px(0.25) == doctest::Approx(205.0));
    const std::string svg = render_svg(t, spec);
    CHECK(svg.find("points=\"90.00,420.00 550.00,40.00\"") != std::string::npos);
    CHECK(count(svg, "<polyline") == 1);
    CHECK(svg.find("omega_rabi [eV]") != std::string::npos);
    CHECK(svg.find("sigma_e [eV]") != std::string::npos);

    spec.log_y = true;
    t.rows[1].stat.mean = 100.0;
    const AxisMap lmap = plot_axes(t, spec);
    CHECK(lmap.py(10.0) == doctest::Approx(230.0));
}

TEST_CASE("one polyline and legend entry per series") {
    SweepTable t;
    t.parameter = SweepParameter::Lambda;
    for (const char* s : {"target=1", "target=30", "target=50", "target=60"}) {
        for (double x : {0.0, 0.5, 1.0}) t.rows.push_back(row(s, x, Channel::Full, 0.01 + x));
    }
    const std::string svg = render_svg(t, PlotSpec{});
    CHECK(count(svg, "<polyline") == 4);
    for (const char* s : {"target=1 full", "target=30 full", "target=50 full", "target=60 full"}) {
        CHECK(count(svg, std::string(">") + s + "<") == 1);
    }
}

TEST_CASE("plots are deterministic and match the golden file") {
    SweepTable t;
    t.rows = {row("N=5", 0.0, Channel::Full, 0.05), row("N=5", 0.0, Channel::WeakCoupling, 0.12),
              row("N=5", 0.5, Channel::Full, 0.045), row("N=5", 0.5, Channel::WeakCoupling, 0.12),
              row("N=5", 1.0, Channel::Full, 0.04), row("N=5", 1.0, Channel::WeakCoupling, 0.12)};
    PlotSpec spec;
    spec.title = "golden";
    spec.log_y = true;
    const Provenance prov = {{"experiment", "omega_sweep"}, {"output_dir", "a--b"}};
    const std::string a = render_svg(t, spec, prov);
    CHECK(a == render_svg(t, spec, prov));
    CHECK(a.find("a-_b") != std::string::npos);
    const std::string golden = slurp(std::filesystem::path(EXCITONFB_TEST_DATA) / "golden_plot.svg");
    CHECK(a == golden);
}

TEST_CASE("non-monotone x is rejected") {
    SweepTable t;
    t.rows = {row("", 0.5, Channel::Full, 1.0), row("", 0.2, Channel::Full, 2.0)};
    CHECK_THROWS_AS(render_svg(t, PlotSpec{}), std::invalid_argument);
    SweepTable empty;
    CHECK_THROWS_AS(render_svg(empty, PlotSpec{}), std::invalid_argument);
}
