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

// excitonfb: command-line front end.
//
//   excitonfb simulate <config> [--out DIR] [--seed U64] [--no-plot]
//   excitonfb crossover <config>
//   excitonfb verify
//
// Exit codes: 0 success, 1 validation error, 2 solver error,
// 3 verification failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "excitonfb/config.hpp"
#include "excitonfb/errors.hpp"
#include "excitonfb/experiments.hpp"
#include "excitonfb/observables.hpp"
#include "excitonfb/output.hpp"
#include "excitonfb/verify.hpp"

namespace fs = std::filesystem;
using namespace excitonfb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerify = 3;

struct Outputs {
    fs::path dir;
    bool plot = true;
    bool log_y = true;
    Provenance provenance;
};

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void report_failed_rows(const SweepTable& table) {
    for (const SweepRow& r : table.rows) {
        if (!r.ok()) {
            std::cerr << "warning: " << parameter_name(table.parameter) << " = " << r.x << " ("
                      << channel_name(r.channel) << "): " << r.status << "\n";
        }
    }
}

void emit(const Outputs& out, const std::string& stem, const SweepTable& table, const std::string& title) {
    fs::create_directories(out.dir);
    const fs::path csv = out.dir / (stem + ".csv");
    write_csv(table, csv.string(), out.provenance);
    std::cout << "wrote " << csv.string() << "\n";
    if (out.plot) {
        PlotSpec spec;
        spec.title = title;
        spec.log_y = out.log_y;
        const fs::path svg = out.dir / (stem + ".svg");
        write_svg_plot(table, svg.string(), spec, out.provenance);
        std::cout << "wrote " << svg.string() << "\n";
    }
    report_failed_rows(table);
}

SweepTable crossover_table(const CrossoverResult& r) {
    SweepTable t;
    t.parameter = SweepParameter::NMolecules;
    for (std::size_t i = 0; i < r.n.size(); ++i) {
        SweepRow nh;
        nh.x = static_cast<double>(r.n[i]);
        nh.channel = Channel::NoHopping;
        nh.stat = {r.sigma_nh[i], 0.0, 1};
        t.rows.push_back(nh);
        SweepRow wc = nh;
        wc.channel = Channel::WeakCoupling;
        wc.stat = {r.sigma_wc[i], 0.0, 1};
        t.rows.push_back(wc);
    }
    return t;
}

int run_crossover(const RunConfig& c, const Outputs& out) {
    std::cerr << "crossover search: N in [" << c.crossover_n_min << ", " << c.crossover_n_max
              << "], omega_rabi = " << c.crossover_omega_rabi << " eV\n";
    try {
        const CrossoverResult r = find_crossover(c.model, c.crossover_n_min, c.crossover_n_max,
                                                 c.crossover_omega_rabi, c.workers);
        emit(out, "crossover", crossover_table(r), "Crossover of NH and WC channels");
        std::cout << "N* = " << r.n_star << " (sign changes: " << r.sign_changes << ")\n";
        return kExitOk;
    } catch (const NoCrossover& e) {
        emit(out, "crossover", crossover_table(e.curves()), "Crossover of NH and WC channels (none found)");
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}

int run_verify(const VerifyOptions& options = {}) {
    const std::vector<CheckResult> results = run_verification(options);
    std::size_t width = 0;
    for (const CheckResult& r : results) width = std::max(width, r.name.size());
    bool all = true;
    double total = 0.0;
    for (const CheckResult& r : results) {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ')
                  << fmt_g(r.seconds) << " s  " << r.detail << "\n";
        all = all && r.passed;
        total += r.seconds;
    }
    std::cout << (all ? "all checks passed" : "verification FAILED") << " (" << fmt_g(total) << " s)\n";
    return all ? kExitOk : kExitVerify;
}

int simulate(const RunConfig& c, const Outputs& out) {
    switch (c.experiment) {
        case ExperimentKind::OmegaSweep: {
            SweepTable all;
            all.parameter = SweepParameter::OmegaRabi;
            for (double n : c.n_series) {
                SweepSpec spec;
                spec.base = resized(c.model, static_cast<std::size_t>(n), c.omega_rabi);
                spec.parameter = SweepParameter::OmegaRabi;
                spec.grid = c.omega_grid;
                spec.channels = c.channels;
                spec.series = "N=" + std::to_string(static_cast<std::size_t>(n));
                spec.workers = c.workers;
                std::cerr << "omega sweep " << spec.series << "\n";
                all.append(run_sweep(spec));
            }
            emit(out, "omega_sweep", all, "Exciton conductance vs collective Rabi frequency");
            return kExitOk;
        }
        case ExperimentKind::NSweep: {
            SweepSpec spec;
            spec.base = c.model;
            spec.parameter = SweepParameter::NMolecules;
            spec.grid = c.n_grid;
            spec.channels = c.channels;
            spec.series = "omega=" + fmt_g(c.omega_rabi);
            spec.workers = c.workers;
            emit(out, "n_sweep", run_sweep(spec), "Exciton conductance vs chain length");
            return kExitOk;
        }
        case ExperimentKind::Crossover:
            return run_crossover(c, out);
        case ExperimentKind::Disorder: {
            SweepSpec clean;
            clean.base = c.model;
            clean.grid = c.omega_grid;
            clean.channels = {Channel::Full, Channel::WeakCoupling, Channel::NoHopping};
            clean.series = "clean";
            clean.workers = c.workers;
            SweepTable table = run_sweep(clean);
            table.ensemble = c.ensemble;
            std::cerr << "disorder ensemble: " << c.ensemble << " members, q = " << c.disorder_q << " eV\n";
            SweepTable noisy = disorder_study(c.model, c.disorder_q, c.ensemble, c.seed, c.omega_grid, c.workers,
                                              c.fix_ends);
            for (SweepRow& r : noisy.rows) r.series = "q=" + fmt_g(c.disorder_q);
            table.append(noisy);
            emit(out, "disorder", table, "Exciton conductance with energetic disorder");
            return kExitOk;
        }
        case ExperimentKind::Feedback: {
            const FeedbackStudy s = feedback_study(c.model, c.targets, c.lambda_grid, c.eta_grid, c.workers);
            emit(out, "feedback_target", s.by_target, "Feedback target molecule");
            emit(out, "feedback_lambda", s.by_lambda, "Feedback rotation angle");
            emit(out, "feedback_eta", s.by_eta, "Detector efficiency");
            return kExitOk;
        }
        case ExperimentKind::SinglePoint: {
            SweepSpec spec;
            spec.base = c.model;
            spec.grid = {c.omega_rabi};
            spec.channels = c.channels;
            spec.workers = c.workers;
            const SweepTable t = run_sweep(spec);
            for (const SweepRow& r : t.rows) {
                std::cout << "sigma_e[" << channel_name(r.channel) << "] = " << fmt_g(r.stat.mean) << " eV\n";
            }
            Outputs no_plot = out;
            no_plot.plot = false;
            emit(no_plot, "single_point", t, "");
            return kExitOk;
        }
        case ExperimentKind::Verify:
            return run_verify();
    }
    return kExitOk;
}

Outputs outputs_for(const RunConfig& c) {
    Outputs out;
    out.dir = c.output_dir;
    out.plot = c.plot;
    out.log_y = c.log_y;
    out.provenance = describe(c);
    return out;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exciton conductance of molecular chains in a lossy cavity, with quantum-jump feedback"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    bool no_plot = false;
    auto* sim = app.add_subcommand("simulate", "Run the experiment described by a config file");
    sim->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "Output directory (overrides the config)");
    sim->add_option("--seed", seed, "Base seed (overrides the config)");
    sim->add_flag("--no-plot", no_plot, "Skip SVG output");

    std::string crossover_path;
    auto* cross = app.add_subcommand("crossover", "Search for the NH/WC crossover chain length");
    cross->add_option("config", crossover_path, "Config file")->required()->check(CLI::ExistingFile);

    app.add_subcommand("verify", "Run the generator and solver self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (*sim) {
        return guarded([&] {
            RunConfig c = load_config(config_path);
            if (out_dir) c.output_dir = *out_dir;
            if (seed) c.seed = *seed;
            if (no_plot) c.plot = false;
            return simulate(c, outputs_for(c));
        });
    }
    if (*cross) {
        return guarded([&] {
            const RunConfig c = load_config(crossover_path);
            return run_crossover(c, outputs_for(c));
        });
    }
    return guarded([] { return run_verify(); });
}
