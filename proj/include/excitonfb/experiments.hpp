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

// experiments.hpp: deterministic parameter sweeps, crossover search,
// disorder ensembles and feedback studies.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "excitonfb/dynamics.hpp"
#include "excitonfb/model.hpp"
#include "excitonfb/observables.hpp"

namespace excitonfb {

enum class SweepParameter { OmegaRabi, NMolecules, Lambda, Eta, FeedbackTarget, DisorderQ };

std::string_view parameter_name(SweepParameter p);  // e.g. "omega_rabi"
std::string_view parameter_unit(SweepParameter p);  // "eV" or "1"
SweepParameter parse_parameter(std::string_view name);

struct DisorderSpec {
    bool enabled = false;
    double q = defaults::disorder_q;  // eV; the mean is the model's omega_reference
    bool fix_ends = true;
};

struct SweepSpec {
    ChainModel base;
    SweepParameter parameter = SweepParameter::OmegaRabi;
    std::vector<double> grid;
    std::vector<Channel> channels{Channel::Full};
    std::size_t ensemble = 1;
    std::uint64_t seed = 0;
    DisorderSpec disorder;
    std::string series;       // label carried into every row
    std::size_t workers = 0;  // 0 = hardware concurrency
    SteadyStateOptions solver;

    void validate() const;
};

struct EnsembleStat {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(count)
    std::size_t count = 0;
};

struct SweepRow {
    std::string series;
    double x = 0.0;
    Channel channel = Channel::Full;
    EnsembleStat stat;
    std::string status = "ok";  // diagnostic text for failed points

    bool ok() const { return status == "ok"; }
};

struct SweepTable {
    SweepParameter parameter = SweepParameter::OmegaRabi;
    std::size_t ensemble = 1;
    std::vector<SweepRow> rows;

    // Rows of one (series, channel) pair in grid order.
    std::vector<SweepRow> select(Channel channel, std::string_view series = {}) const;
    void append(const SweepTable& other);
};

// Seed of ensemble member k, derived from the base seed.
std::uint64_t member_seed(std::uint64_t base_seed, std::size_t member);

// Model for one grid value and ensemble member, as run_sweep builds it.
ChainModel sweep_point_model(const SweepSpec& spec, double value, std::size_t member);

SweepTable run_sweep(const SweepSpec& spec);

struct CrossoverResult {
    std::size_t n_star = 0;
    double omega_rabi = 0.0;
    std::vector<std::size_t> n;
    std::vector<double> sigma_nh;
    std::vector<double> sigma_wc;
    std::size_t sign_changes = 0;  // sign changes of sigma_nh - sigma_wc over n
};

class NoCrossover : public std::runtime_error {
 public:
    NoCrossover(const std::string& what, CrossoverResult curves)
        : std::runtime_error(what), curves_(std::move(curves)) {}
    const CrossoverResult& curves() const noexcept { return curves_; }

 private:
    CrossoverResult curves_;
};

// Smallest N in (n_min, n_max] with sigma_NH(N) >= sigma_WC(N) while
// sigma_NH(N-1) < sigma_WC(N-1), at the given collective Rabi frequency.
CrossoverResult find_crossover(const ChainModel& model_template, std::size_t n_min, std::size_t n_max,
                               double omega_rabi, std::size_t workers = 0);

SweepTable disorder_study(const ChainModel& model, double q, std::size_t ensemble, std::uint64_t seed,
                          std::span<const double> omega_grid, std::size_t workers = 0, bool fix_ends = true);

struct FeedbackStudy {
    SweepTable by_target;  // at the model's lambda and eta
    SweepTable by_lambda;  // at the model's target and eta
    SweepTable by_eta;     // at the model's target and lambda
};

FeedbackStudy feedback_study(const ChainModel& model, std::span<const double> targets,
                             std::span<const double> lambda_grid, std::span<const double> eta_grid,
                             std::size_t workers = 0);

std::vector<double> linspace(double first, double last, std::size_t count);

}  // namespace excitonfb
