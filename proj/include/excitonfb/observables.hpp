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

// observables.hpp: exciton conductance and its channel decomposition.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "excitonfb/dynamics.hpp"
#include "excitonfb/model.hpp"

namespace excitonfb {

// FULL: model as configured. WC: cavity coupling removed (g = 0).
// NH: dipole-dipole hopping removed.
enum class Channel { Full, WeakCoupling, NoHopping };

std::string_view channel_name(Channel channel);  // "full", "wc", "nh"
Channel parse_channel(std::string_view name);

struct ModelSnapshot {
    double omega_rabi = 0.0;
    std::size_t n_molecules = 0;
    double lambda = 0.0;  // 0 when feedback is off
    double eta = 0.0;
    std::uint64_t seed = 0;
};

struct ConductanceResult {
    double sigma_e = 0.0;    // eV, |gamma_d tr(H L[rho]) / gamma_p|
    double raw_value = 0.0;  // signed gamma_d tr(H L[rho]) / gamma_p, <= 0
    Channel channel = Channel::Full;
    ModelSnapshot snapshot;
};

// sigma_e = gamma_d tr(H L_{sigma_N^-}[rho]) / gamma_p with a unit-rate
// dissipator on the last molecule. Throws NumericalInconsistency if the trace
// has a non-negligible imaginary part or positive sign.
ConductanceResult exciton_conductance(const OperatorMatrix& h, const SteadyState& rho_ss, double gamma_d,
                                      double gamma_p);

// The model with the channel's flag applied.
ChainModel channel_model(const ChainModel& model, Channel channel);

ModelSnapshot snapshot_of(const ChainModel& model, std::uint64_t seed = 0);

// Hamiltonian, generator and steady state for one channel, then sigma_e.
ConductanceResult conductance(const ChainModel& model, Channel channel = Channel::Full,
                              const SteadyStateOptions& options = {});

std::vector<ConductanceResult> channel_conductances(const ChainModel& model, std::span<const Channel> modes,
                                                    const SteadyStateOptions& options = {});

}  // namespace excitonfb
