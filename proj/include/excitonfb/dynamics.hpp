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

// dynamics.hpp: Lindblad generators on column-stacked density matrices,
// jump-feedback variants, steady states and an exponential propagator.
//
// Vectorization: vec(rho)[i + j*D] = rho(i, j) (column stacking), so that
// vec(A rho B) = (B^T kron A) vec(rho).

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "excitonfb/hilbert.hpp"
#include "excitonfb/model.hpp"

namespace excitonfb {

// One incoherent channel rate * L_s[rho].
struct JumpChannel {
    double rate;
    OperatorMatrix op;
};

class Superoperator {
 public:
    explicit Superoperator(const ExcitationBasis& basis);  // zero generator
    Superoperator(const ExcitationBasis& basis, Eigen::MatrixXcd entries);

    const ExcitationBasis& basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return basis_.dim() * basis_.dim(); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    Eigen::MatrixXcd& mutable_entries() noexcept { return entries_; }

    OperatorMatrix apply(const OperatorMatrix& rho) const;

 private:
    ExcitationBasis basis_;
    Eigen::MatrixXcd entries_;
};

Eigen::VectorXcd vectorize(const OperatorMatrix& rho);
OperatorMatrix devectorize(const ExcitationBasis& basis, const Eigen::VectorXcd& v);

// Superoperator matrices of rho -> A rho, rho -> rho A, rho -> A rho B.
Eigen::MatrixXcd left_multiplication(const OperatorMatrix& a);
Eigen::MatrixXcd right_multiplication(const OperatorMatrix& a);
Eigen::MatrixXcd sandwich(const OperatorMatrix& a, const OperatorMatrix& b);

// s rho s^dagger - (s^dagger s rho + rho s^dagger s) / 2
OperatorMatrix dissipator(const OperatorMatrix& s, const OperatorMatrix& rho);

// -i[H, rho] + sum_k rate_k L_{s_k}[rho]; H must be Hermitian.
Superoperator build_liouvillian(const OperatorMatrix& h, std::span<const JumpChannel> channels);

// Channels of the plain chain: gamma_d on each sigma_m^-, gamma_phi on each
// sigma_m^+ sigma_m^-, kappa on a, gamma_p on sigma_1^+.
std::vector<JumpChannel> model_channels(const ChainModel& model);

// exp(-i lambda pi sigma_target^x) with sigma^x projected onto the truncated
// space: a rotation in {|G,0>, |e_target,0>} and identity elsewhere.
OperatorMatrix feedback_unitary(const ExcitationBasis& basis, std::size_t target, double lambda);

// model_channels with the cavity channel split into kappa*eta on U_fb a and
// kappa*(1-eta) on a.
std::vector<JumpChannel> feedback_channels(const ChainModel& model, std::size_t target, double lambda,
                                           double eta);

// eta == 0 takes exactly the build_liouvillian(h, model_channels(model)) path.
Superoperator build_feedback_liouvillian(const OperatorMatrix& h, const ChainModel& model, std::size_t target,
                                         double lambda, double eta);

// Generator for a model, with feedback when model.feedback.enabled.
Superoperator build_model_liouvillian(const ChainModel& model);

struct SteadyStateOptions {
    double residual_tol = 1e-10;
    double hermiticity_tol = 1e-12;
    double positivity_tol = -1e-10;
    // Reciprocal condition estimate of the bordered system below which the
    // null space is treated as degenerate.
    double min_rcond = 1e-12;
    // Full SVD of L: second-smallest singular value must exceed
    // uniqueness_tol * largest. O(D^6); meant for verification runs.
    bool audit_uniqueness = false;
    double uniqueness_tol = 1e-8;
};

struct SteadyState {
    OperatorMatrix rho;
    double residual_norm = 0.0;
    double min_eigenvalue = 0.0;
    double rcond = 0.0;
    bool nullity_checked = false;  // true when the SVD audit ran
    bool unique = true;            // nullity == 1 as far as checked
    double singular_gap = 0.0;     // sigma_{n-1} / sigma_max from the audit
};

// Solves L vec(rho) = 0, tr rho = 1 by a dense LU with one population row
// replaced by the trace constraint. Throws DegenerateSteadyState or
// ConvergenceError.
SteadyState steady_state(const Superoperator& l, const SteadyStateOptions& options = {});

// exp(L t) vec(rho0), devectorized.
OperatorMatrix propagate(const Superoperator& l, const OperatorMatrix& rho0, double t);

}  // namespace excitonfb
