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

#include "excitonfb/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "excitonfb/errors.hpp"

namespace excitonfb {

std::string_view channel_name(Channel channel) {
    switch (channel) {
        case Channel::Full:
            return "full";
        case Channel::WeakCoupling:
            return "wc";
        case Channel::NoHopping:
            return "nh";
    }
    return "?";
}

Channel parse_channel(std::string_view name) {
    if (name == "full") return Channel::Full;
    if (name == "wc") return Channel::WeakCoupling;
    if (name == "nh") return Channel::NoHopping;
    throw std::invalid_argument("unknown channel '" + std::string(name) + "' (expected full, wc or nh)");
}

ConductanceResult exciton_conductance(const OperatorMatrix& h, const SteadyState& rho_ss, double gamma_d,
                                      double gamma_p) {
    if (!(h.basis() == rho_ss.rho.basis())) throw std::invalid_argument("exciton_conductance: basis mismatch");
    if (!(gamma_p > 0.0)) throw std::invalid_argument("exciton_conductance: gamma_p must be > 0");
    const ExcitationBasis& basis = h.basis();
    const OperatorMatrix drained = dissipator(lowering_op(basis, basis.n_molecules()), rho_ss.rho);
    const cplx value = gamma_d * (h * drained).trace() / gamma_p;

    if (std::abs(value.imag()) > std::max(1e-9 * std::abs(value.real()), 1e-15)) {
        throw NumericalInconsistency("exciton_conductance: imaginary part " + std::to_string(value.imag()) +
                                     " vs real part " + std::to_string(value.real()));
    }
    // The decay channel removes energy; a positive trace beyond round-off
    // means the sign convention no longer holds.
    if (value.real() > 1e-14) {
        throw NumericalInconsistency("exciton_conductance: energy current has positive sign (" +
                                     std::to_string(value.real()) + ")");
    }
    ConductanceResult result;
    result.raw_value = value.real();
    result.sigma_e = std::abs(value.real());
    result.snapshot.n_molecules = basis.n_molecules();
    return result;
}

ChainModel channel_model(const ChainModel& model, Channel channel) {
    ChainModel out = model;
    switch (channel) {
        case Channel::Full:
            break;
        case Channel::WeakCoupling:
            out.cavity_coupling_enabled = false;
            break;
        case Channel::NoHopping:
            out.hopping_enabled = false;
            break;
    }
    return out;
}

ModelSnapshot snapshot_of(const ChainModel& model, std::uint64_t seed) {
    ModelSnapshot s;
    s.omega_rabi = collective_rabi(model.g);
    s.n_molecules = model.n_molecules;
    if (model.feedback.enabled) {
        s.lambda = model.feedback.lambda;
        s.eta = model.feedback.eta;
    }
    s.seed = seed;
    return s;
}

ConductanceResult conductance(const ChainModel& model, Channel channel, const SteadyStateOptions& options) {
    const ChainModel variant = channel_model(model, channel);
    const OperatorMatrix h = build_hamiltonian(variant);
    const Superoperator l = variant.feedback.enabled
                                ? build_feedback_liouvillian(h, variant, variant.feedback_target(),
                                                             variant.feedback.lambda, variant.feedback.eta)
                                : build_liouvillian(h, model_channels(variant));
    const SteadyState ss = steady_state(l, options);
    ConductanceResult result = exciton_conductance(h, ss, variant.gamma_d(), variant.gamma_p);
    result.channel = channel;
    result.snapshot = snapshot_of(model);
    return result;
}

std::vector<ConductanceResult> channel_conductances(const ChainModel& model, std::span<const Channel> modes,
                                                    const SteadyStateOptions& options) {
    std::vector<ConductanceResult> out;
    out.reserve(modes.size());
    for (Channel c : modes) out.push_back(conductance(model, c, options));
    return out;
}

}  // namespace excitonfb
