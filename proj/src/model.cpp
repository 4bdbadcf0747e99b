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

#include "excitonfb/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace excitonfb {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("ChainModel: " + what);
}

void require_positive(double value, const char* name) {
    require(std::isfinite(value) && value > 0.0, std::string(name) + " must be > 0, got " + std::to_string(value));
}

}  // namespace

void ChainModel::validate() const {
    require(n_molecules >= 1, "n_molecules must be >= 1");
    require(omega_molecule.size() == n_molecules,
            "omega_molecule has " + std::to_string(omega_molecule.size()) + " entries, expected " +
                std::to_string(n_molecules));
    require(g.size() == n_molecules,
            "g has " + std::to_string(g.size()) + " entries, expected " + std::to_string(n_molecules));
    require_positive(omega_cavity, "omega_cavity");
    require_positive(omega_reference, "omega_reference");
    for (double w : omega_molecule) require_positive(w, "omega_molecule");
    for (const cplx& gm : g) require(std::isfinite(gm.real()) && std::isfinite(gm.imag()), "g must be finite");
    require_positive(spacing_nm, "spacing_nm");
    require_positive(dipole_debye, "dipole_debye");
    require(std::abs(dipole_orientation.norm() - 1.0) < 1e-12, "dipole_orientation must be a unit vector");
    require_positive(gamma_r, "gamma_r");
    require_positive(gamma_nr, "gamma_nr");
    require_positive(gamma_phi, "gamma_phi");
    require_positive(kappa, "kappa");
    require_positive(gamma_p, "gamma_p");
    if (delta_override) require(std::isfinite(*delta_override), "delta_override must be finite");
    require(feedback.target <= n_molecules, "feedback target " + std::to_string(feedback.target) +
                                                " outside 1.." + std::to_string(n_molecules));
    require(std::isfinite(feedback.lambda) && feedback.lambda >= 0.0, "feedback lambda must be >= 0");
    require(feedback.eta >= 0.0 && feedback.eta <= 1.0, "feedback eta must lie in [0, 1]");
}

ChainModel make_chain_model(std::size_t n_molecules, double omega_rabi) {
    ChainModel model;
    return resized(model, n_molecules, omega_rabi);
}

ChainModel resized(const ChainModel& base, std::size_t n_molecules, double omega_rabi) {
    if (n_molecules == 0) throw std::invalid_argument("resized: n_molecules must be >= 1");
    ChainModel model = base;
    model.n_molecules = n_molecules;
    model.omega_molecule.assign(n_molecules, base.omega_reference);
    model.g = uniform_g_for_rabi(omega_rabi, n_molecules);
    if (model.feedback.target > n_molecules) model.feedback.target = 0;
    return model;
}

ChainModel with_rabi(const ChainModel& base, double omega_rabi) {
    ChainModel model = base;
    model.g = uniform_g_for_rabi(omega_rabi, base.n_molecules);
    return model;
}

double dipole_coupling(const ChainModel& model, std::size_t m, std::size_t n) {
    if (m == n) throw std::invalid_argument("dipole_coupling: m == n");
    if (m < 1 || n < 1 || m > model.n_molecules || n > model.n_molecules) {
        throw std::invalid_argument("dipole_coupling: index outside 1.." + std::to_string(model.n_molecules));
    }
    const double separation = static_cast<double>(m > n ? m - n : n - m) * model.spacing_nm * 1e-9;
    const Eigen::Vector3d& u = model.dipole_orientation;
    // R_hat = +-x; the orientation factor is even in R_hat.
    const double angular = u.dot(u) - 3.0 * u.x() * u.x();
    const double d = model.dipole_debye * units::debye;
    const double joules = units::coulomb_constant * d * d * angular / (separation * separation * separation);
    return joules / units::elementary_charge;
}

Eigen::MatrixXd hopping_matrix(const ChainModel& model) {
    const auto n = static_cast<Eigen::Index>(model.n_molecules);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
    if (!model.hopping_enabled) return v;
    // V_mn depends only on |m - n|.
    std::vector<double> by_distance(model.n_molecules, 0.0);
    for (std::size_t k = 1; k < model.n_molecules; ++k) {
        if (model.nearest_neighbor_only && k > 1) break;
        by_distance[k] = dipole_coupling(model, 1, 1 + k);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) v(i, j) = by_distance[static_cast<std::size_t>(std::abs(i - j))];
        }
    }
    return v;
}

double collective_rabi(std::span<const cplx> g) {
    double sum = 0.0;
    for (const cplx& gm : g) sum += std::norm(gm);
    return 2.0 * std::sqrt(sum);
}

std::vector<cplx> uniform_g_for_rabi(double omega_rabi, std::size_t n_molecules) {
    if (!(omega_rabi >= 0.0)) throw std::invalid_argument("uniform_g_for_rabi: omega_rabi must be >= 0");
    if (n_molecules == 0) throw std::invalid_argument("uniform_g_for_rabi: n_molecules must be >= 1");
    const double gm = omega_rabi / (2.0 * std::sqrt(static_cast<double>(n_molecules)));
    return std::vector<cplx>(n_molecules, cplx(gm, 0.0));
}

double detuning_shift(const ChainModel& model) {
    if (!model.hopping_enabled) return 0.0;
    if (model.delta_override) return *model.delta_override;
    return hopping_matrix(model).sum() / static_cast<double>(model.n_molecules);
}

double cavity_energy(const ChainModel& model) {
    return model.zero_detuning ? model.omega_reference + detuning_shift(model) : model.omega_cavity;
}

OperatorMatrix build_hamiltonian(const ChainModel& model) {
    model.validate();
    const ExcitationBasis basis = model.basis();
    const auto n = static_cast<Eigen::Index>(model.n_molecules);
    const auto photon = static_cast<Eigen::Index>(basis.photon());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 2, n + 2);

    h(photon, photon) = cavity_energy(model);
    for (Eigen::Index m = 0; m < n; ++m) {
        h(m + 1, m + 1) = model.omega_molecule[static_cast<std::size_t>(m)];
    }
    if (model.cavity_coupling_enabled) {
        for (Eigen::Index m = 0; m < n; ++m) {
            const cplx gm = model.g[static_cast<std::size_t>(m)];
            h(m + 1, photon) = gm;
            h(photon, m + 1) = std::conj(gm);
        }
    }
    if (model.hopping_enabled) {
        h.block(1, 1, n, n) += hopping_matrix(model).cast<cplx>();
    }
    return OperatorMatrix(basis, std::move(h));
}

std::vector<double> sample_disorder(double p, double q, std::size_t n_molecules, bool fix_ends,
                                    std::uint64_t seed) {
    if (!(q >= 0.0)) throw std::invalid_argument("sample_disorder: q must be >= 0");
    std::vector<double> energies(n_molecules, p);
    if (q > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> dist(p, q);
        for (double& w : energies) w = dist(rng);
    }
    if (fix_ends && n_molecules > 0) {
        energies.front() = p;
        energies.back() = p;
    }
    return energies;
}

}  // namespace excitonfb
