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

// model.hpp: physical parameters of a molecular chain in a lossy cavity and
// assembly of the single-excitation Hamiltonian.
//
// Units: hbar = 1, energies and rates in eV, lengths in nm, dipoles in Debye.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "excitonfb/hilbert.hpp"

namespace excitonfb {

namespace defaults {
inline constexpr double omega_cavity = 2.11;     // eV
inline constexpr double omega_molecule = 2.11;   // eV
inline constexpr double gamma_r = 1.32e-6;       // eV
inline constexpr double gamma_nr = 1.10e-3;      // eV
inline constexpr double gamma_phi = 26.3e-3;     // eV
inline constexpr double kappa = 0.1;             // eV
inline constexpr double gamma_p = 1e-6;          // eV, small enough for the linear regime
inline constexpr double dipole_debye = 36.0;
inline constexpr double spacing_nm = 3.5;       // nm; not stated in the source, see README
inline constexpr double disorder_q = 0.211;      // eV
inline constexpr double feedback_lambda = 0.5;
}  // namespace defaults

namespace units {
inline constexpr double debye = 3.33564e-30;         // C m
inline constexpr double coulomb_constant = 8.9875517923e9;  // 1/(4 pi eps0), N m^2 / C^2
inline constexpr double elementary_charge = 1.602176634e-19;  // C (J per eV)
}  // namespace units

// Quantum-jump feedback: after each detected cavity photon the unitary
// exp(-i lambda pi sigma_target^x) is applied.
struct FeedbackSettings {
    bool enabled = false;
    std::size_t target = 0;  // 1-based molecule index; 0 selects the last molecule
    double lambda = defaults::feedback_lambda;
    double eta = 1.0;        // detector efficiency

    friend bool operator==(const FeedbackSettings&, const FeedbackSettings&) = default;
};

struct ChainModel {
    std::size_t n_molecules = 1;

    // Cavity energy. With zero_detuning set it is derived as
    // omega_reference + detuning_shift() and this field is ignored.
    double omega_cavity = defaults::omega_cavity;
    bool zero_detuning = true;
    double omega_reference = defaults::omega_molecule;

    std::vector<double> omega_molecule;  // N exciton energies
    std::vector<cplx> g;                 // N cavity couplings; H holds g_m sigma_m^+ a + h.c.

    double spacing_nm = defaults::spacing_nm;
    double dipole_debye = defaults::dipole_debye;
    // Common dipole direction; the chain runs along x.
    Eigen::Vector3d dipole_orientation = Eigen::Vector3d::UnitY();

    double gamma_r = defaults::gamma_r;
    double gamma_nr = defaults::gamma_nr;
    double gamma_phi = defaults::gamma_phi;
    double kappa = defaults::kappa;
    double gamma_p = defaults::gamma_p;

    bool hopping_enabled = true;
    bool cavity_coupling_enabled = true;
    bool nearest_neighbor_only = false;
    std::optional<double> delta_override;

    FeedbackSettings feedback;

    double gamma_d() const noexcept { return gamma_r + gamma_nr; }
    std::size_t feedback_target() const noexcept {
        return feedback.target == 0 ? n_molecules : feedback.target;
    }
    ExcitationBasis basis() const { return ExcitationBasis(n_molecules); }

    // Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

// Chain of n identical molecules at the default parameters, with uniform
// couplings giving collective Rabi frequency omega_rabi.
ChainModel make_chain_model(std::size_t n_molecules, double omega_rabi);

// Copy of base with a new size and uniform couplings; molecular energies are
// reset to base.omega_reference.
ChainModel resized(const ChainModel& base, std::size_t n_molecules, double omega_rabi);
ChainModel with_rabi(const ChainModel& base, double omega_rabi);

// Quasistatic dipole-dipole coupling between molecules m and n (1-based), eV.
double dipole_coupling(const ChainModel& model, std::size_t m, std::size_t n);

// N x N coupling matrix entering the Hamiltonian (honours hopping_enabled and
// nearest_neighbor_only); zero diagonal.
Eigen::MatrixXd hopping_matrix(const ChainModel& model);

// Omega = 2 sqrt(sum |g_m|^2)
double collective_rabi(std::span<const cplx> g);
std::vector<cplx> uniform_g_for_rabi(double omega_rabi, std::size_t n_molecules);

// Bright-state expectation of the dipole-dipole term: (1/N) sum_{m != n} V_mn.
double detuning_shift(const ChainModel& model);
double cavity_energy(const ChainModel& model);

OperatorMatrix build_hamiltonian(const ChainModel& model);

// N energies ~ Normal(p, q^2); with fix_ends the first and last are exactly p.
std::vector<double> sample_disorder(double p, double q, std::size_t n_molecules, bool fix_ends,
                                    std::uint64_t seed);

}  // namespace excitonfb
