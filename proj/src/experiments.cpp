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

#include "excitonfb/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "excitonfb/errors.hpp"

namespace excitonfb {

namespace {

template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
}

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

EnsembleStat summarize(const std::vector<double>& values) {
    EnsembleStat s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = std::nan("");
        return s;
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        const double var = ss / static_cast<double>(values.size() - 1);
        s.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return s;
}

}  // namespace

std::string_view parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::OmegaRabi:
            return "omega_rabi";
        case SweepParameter::NMolecules:
            return "n_molecules";
        case SweepParameter::Lambda:
            return "lambda";
        case SweepParameter::Eta:
            return "eta";
        case SweepParameter::FeedbackTarget:
            return "feedback_target";
        case SweepParameter::DisorderQ:
            return "disorder_q";
    }
    return "?";
}

std::string_view parameter_unit(SweepParameter p) {
    switch (p) {
        case SweepParameter::OmegaRabi:
        case SweepParameter::DisorderQ:
            return "eV";
        default:
            return "1";
    }
}

SweepParameter parse_parameter(std::string_view name) {
    for (auto p : {SweepParameter::OmegaRabi, SweepParameter::NMolecules, SweepParameter::Lambda, SweepParameter::Eta,
                   SweepParameter::FeedbackTarget, SweepParameter::DisorderQ}) {
        if (parameter_name(p) == name) return p;
    }
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
    if (grid.empty()) throw std::invalid_argument("SweepSpec: grid is empty");
    if (ensemble < 1) throw std::invalid_argument("SweepSpec: ensemble size must be >= 1");
    if (channels.empty()) throw std::invalid_argument("SweepSpec: no channels requested");
    const bool increasing = grid.size() < 2 || grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (increasing ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
            throw std::invalid_argument("SweepSpec: grid must be strictly monotone");
        }
    }
    for (double v : grid) {
        if (!std::isfinite(v)) throw std::invalid_argument("SweepSpec: grid value is not finite");
        if ((parameter == SweepParameter::NMolecules || parameter == SweepParameter::FeedbackTarget) &&
            (!is_integral(v) || v < 1.0)) {
            throw std::invalid_argument("SweepSpec: " + std::string(parameter_name(parameter)) +
                                        " grid needs positive integers");
        }
    }
    base.validate();
}

std::vector<SweepRow> SweepTable::select(Channel channel, std::string_view series) const {
    std::vector<SweepRow> out;
    for (const SweepRow& r : rows) {
        if (r.channel == channel && (series.empty() || r.series == series)) out.push_back(r);
    }
    return out;
}

void SweepTable::append(const SweepTable& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    ensemble = std::max(ensemble, other.ensemble);
}

std::uint64_t member_seed(std::uint64_t base_seed, std::size_t member) {
    // splitmix64 of (base, member)
    std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(member) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ChainModel sweep_point_model(const SweepSpec& spec, double value, std::size_t member) {
    ChainModel model = spec.base;
    double q = spec.disorder.q;
    bool disordered = spec.disorder.enabled;
    switch (spec.parameter) {
        case SweepParameter::OmegaRabi:
            model = with_rabi(model, value);
            break;
        case SweepParameter::NMolecules:
            model = resized(model, static_cast<std::size_t>(value), collective_rabi(spec.base.g));
            break;
        case SweepParameter::Lambda:
            model.feedback.enabled = true;
            model.feedback.lambda = value;
            break;
        case SweepParameter::Eta:
            model.feedback.enabled = true;
            model.feedback.eta = value;
            break;
        case SweepParameter::FeedbackTarget:
            model.feedback.enabled = true;
            model.feedback.target = static_cast<std::size_t>(value);
            break;
        case SweepParameter::DisorderQ:
            disordered = true;
            q = value;
            break;
    }
    if (disordered) {
        model.omega_molecule = sample_disorder(model.omega_reference, q, model.n_molecules, spec.disorder.fix_ends,
                                               member_seed(spec.seed, member));
    }
    model.validate();
    return model;
}

SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::size_t points = spec.grid.size();
    const std::size_t jobs = points * spec.ensemble;

    // Build (and validate) every model up front so bad input fails before compute.
    std::vector<ChainModel> models;
    models.reserve(jobs);
    for (std::size_t p = 0; p < points; ++p) {
        for (std::size_t k = 0; k < spec.ensemble; ++k) models.push_back(sweep_point_model(spec, spec.grid[p], k));
    }

    struct Outcome {
        std::vector<ConductanceResult> results;
        std::string error;
        std::exception_ptr fatal;
    };
    std::vector<Outcome> outcomes(jobs);
    parallel_for(jobs, spec.workers, [&](std::size_t j) {
        try {
            outcomes[j].results = channel_conductances(models[j], spec.channels, spec.solver);
        } catch (const NumericalInconsistency&) {
            outcomes[j].fatal = std::current_exception();
        } catch (const std::exception& e) {
            outcomes[j].error = e.what();
        }
    });
    for (const Outcome& o : outcomes) {
        if (o.fatal) std::rethrow_exception(o.fatal);
    }

    SweepTable table;
    table.parameter = spec.parameter;
    table.ensemble = spec.ensemble;
    for (std::size_t p = 0; p < points; ++p) {
        for (std::size_t c = 0; c < spec.channels.size(); ++c) {
            std::vector<double> values;
            std::string first_error;
            for (std::size_t k = 0; k < spec.ensemble; ++k) {
                const Outcome& o = outcomes[p * spec.ensemble + k];
                if (o.error.empty()) {
                    values.push_back(o.results[c].sigma_e);
                } else if (first_error.empty()) {
                    first_error = o.error;
                }
            }
            SweepRow row;
            row.series = spec.series;
            row.x = spec.grid[p];
            row.channel = spec.channels[c];
            row.stat = summarize(values);
            if (!first_error.empty()) row.status = "error: " + first_error;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

CrossoverResult find_crossover(const ChainModel& model_template, std::size_t n_min, std::size_t n_max,
                               double omega_rabi, std::size_t workers) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("find_crossover: invalid N range");
    SweepSpec spec;
    spec.base = with_rabi(model_template, omega_rabi);
    spec.parameter = SweepParameter::NMolecules;
    for (std::size_t n = n_min; n <= n_max; ++n) spec.grid.push_back(static_cast<double>(n));
    spec.channels = {Channel::NoHopping, Channel::WeakCoupling};
    spec.workers = workers;
    const SweepTable table = run_sweep(spec);

    CrossoverResult result;
    result.omega_rabi = omega_rabi;
    for (const SweepRow& row : table.rows) {
        if (!row.ok()) {
            throw ConvergenceError("find_crossover: N = " + std::to_string(static_cast<std::size_t>(row.x)) + " " +
                                   row.status);
        }
    }
    for (const SweepRow& row : table.select(Channel::NoHopping)) {
        result.n.push_back(static_cast<std::size_t>(row.x));
        result.sigma_nh.push_back(row.stat.mean);
    }
    for (const SweepRow& row : table.select(Channel::WeakCoupling)) result.sigma_wc.push_back(row.stat.mean);

    std::optional<std::size_t> first;
    for (std::size_t i = 1; i < result.n.size(); ++i) {
        const bool before = result.sigma_nh[i - 1] >= result.sigma_wc[i - 1];
        const bool after = result.sigma_nh[i] >= result.sigma_wc[i];
        if (before != after) {
            ++result.sign_changes;
            if (!first && after) first = result.n[i];
        }
    }
    if (!first) {
        throw NoCrossover("find_crossover: sigma_NH does not overtake sigma_WC for N in [" + std::to_string(n_min) +
                              ", " + std::to_string(n_max) + "]",
                          std::move(result));
    }
    result.n_star = *first;
    return result;
}

SweepTable disorder_study(const ChainModel& model, double q, std::size_t ensemble, std::uint64_t seed,
                          std::span<const double> omega_grid, std::size_t workers, bool fix_ends) {
    if (!(q >= 0.0)) throw std::invalid_argument("disorder_study: q must be >= 0");
    SweepSpec spec;
    spec.base = model;
    spec.parameter = SweepParameter::OmegaRabi;
    spec.grid.assign(omega_grid.begin(), omega_grid.end());
    spec.channels = {Channel::Full, Channel::WeakCoupling, Channel::NoHopping};
    spec.ensemble = ensemble;
    spec.seed = seed;
    spec.disorder = {.enabled = true, .q = q, .fix_ends = fix_ends};
    spec.workers = workers;
    return run_sweep(spec);
}

FeedbackStudy feedback_study(const ChainModel& model, std::span<const double> targets,
                             std::span<const double> lambda_grid, std::span<const double> eta_grid,
                             std::size_t workers) {
    ChainModel base = model;
    base.feedback.enabled = true;
    auto sweep = [&](SweepParameter p, std::span<const double> grid) {
        SweepSpec spec;
        spec.base = base;
        spec.parameter = p;
        spec.grid.assign(grid.begin(), grid.end());
        spec.workers = workers;
        spec.series = std::string(parameter_name(p));
        return run_sweep(spec);
    };
    FeedbackStudy study;
    study.by_target = sweep(SweepParameter::FeedbackTarget, targets);
    study.by_lambda = sweep(SweepParameter::Lambda, lambda_grid);
    study.by_eta = sweep(SweepParameter::Eta, eta_grid);
    return study;
}

std::vector<double> linspace(double first, double last, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {first};
    std::vector<double> out(count);
    const double step = (last - first) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + step * static_cast<double>(i);
    out.back() = last;
    return out;
}

}  // namespace excitonfb
