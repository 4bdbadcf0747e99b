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

// config.hpp: run configuration documents.
//
// Flat "key = value" lines grouped under [section] headers; '#' starts a
// comment. Unknown keys, duplicate keys and out-of-range values are rejected
// with the offending key and line number.
//
//   experiment = omega_sweep      # omega_sweep | n_sweep | crossover | disorder
//                                 # | feedback | single_point | verify
//   seed = 7
//   [model]
//   n_molecules = 10
//   omega_rabi = 1.0
//   [omega_sweep]
//   grid = linspace(0, 1, 21)
//   n_series = 5, 10, 40, 60

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excitonfb/model.hpp"
#include "excitonfb/observables.hpp"

namespace excitonfb {

class ConfigError : public std::invalid_argument {
 public:
    ConfigError(const std::string& message, std::string key, std::size_t line);
    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

 private:
    std::string key_;
    std::size_t line_;
};

enum class ExperimentKind { OmegaSweep, NSweep, Crossover, Disorder, Feedback, SinglePoint, Verify };

std::string_view experiment_name(ExperimentKind kind);

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::SinglePoint;
    ChainModel model = make_chain_model(10, 1.0);  // n_molecules and omega_rabi applied
    double omega_rabi = 1.0;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    bool plot = true;
    bool log_y = true;
    std::size_t workers = 0;
    std::vector<Channel> channels{Channel::Full, Channel::WeakCoupling, Channel::NoHopping};

    // [omega_sweep]
    std::vector<double> omega_grid;
    std::vector<double> n_series;
    // [n_sweep]
    std::vector<double> n_grid;
    // [crossover]
    std::size_t crossover_n_min = 5;
    std::size_t crossover_n_max = 40;
    double crossover_omega_rabi = 1.0;
    // [disorder]
    double disorder_q = defaults::disorder_q;
    std::size_t ensemble = 100;
    bool fix_ends = true;
    // [feedback_study]
    std::vector<double> targets;
    std::vector<double> lambda_grid;
    std::vector<double> eta_grid;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Fully resolved settings as (key, value) pairs, for provenance blocks.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

}  // namespace excitonfb
