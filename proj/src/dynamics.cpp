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

#include "excitonfb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "excitonfb/errors.hpp"

namespace excitonfb {

namespace {

using Index = Eigen::Index;

struct Entry {
    Index row;
    Index col;
    cplx value;
};

std::vector<Entry> nonzeros(const Eigen::MatrixXcd& m) {
    std::vector<Entry> out;
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            if (m(i, j) != cplx(0.0, 0.0)) out.push_back({i, j, m(i, j)});
        }
    }
    return out;
}

// target += coeff * kron(outer, inner), visiting only nonzero entries.
void add_kron(Eigen::MatrixXcd& target, const Eigen::MatrixXcd& outer, const Eigen::MatrixXcd& inner, cplx coeff) {
    const Index d = inner.rows();
    const auto outer_nz = nonzeros(outer);
    const auto inner_nz = nonzeros(inner);
    for (const Entry& a : outer_nz) {
        const cplx ca = coeff * a.value;
        for (const Entry& b : inner_nz) {
            target(a.row * d + b.row, a.col * d + b.col) += ca * b.value;
        }
    }
}

Eigen::MatrixXcd identity_like(const OperatorMatrix& a) {
    const auto d = static_cast<Index>(a.dim());
    return Eigen::MatrixXcd::Identity(d, d);
}

Eigen::MatrixXcd zero_superop(const ExcitationBasis& basis) {
    const auto d2 = static_cast<Index>(basis.dim() * basis.dim());
    return Eigen::MatrixXcd::Zero(d2, d2);
}

// cos(pi x), sin(pi x) exact at multiples of 1/2.
std::pair<double, double> cos_sin_pi(double x) {
    const double r = std::fmod(x, 2.0);
    if (r == 0.0) return {1.0, 0.0};
    if (r == 0.5) return {0.0, 1.0};
    if (r == 1.0) return {-1.0, 0.0};
    if (r == 1.5) return {0.0, -1.0};
    const double angle = M_PI * r;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Superoperator::Superoperator(const ExcitationBasis& basis) : basis_(basis), entries_(zero_superop(basis)) {}

Superoperator::Superoperator(const ExcitationBasis& basis, Eigen::MatrixXcd entries)
    : basis_(basis), entries_(std::move(entries)) {
    const auto d2 = static_cast<Index>(basis_.dim() * basis_.dim());
    if (entries_.rows() != d2 || entries_.cols() != d2) {
        throw std::invalid_argument("Superoperator: expected " + std::to_string(d2) + "x" + std::to_string(d2) +
                                    " entries");
    }
}

OperatorMatrix Superoperator::apply(const OperatorMatrix& rho) const {
    if (!(rho.basis() == basis_)) throw std::invalid_argument("Superoperator::apply: basis mismatch");
    return devectorize(basis_, entries_ * vectorize(rho));
}

Eigen::VectorXcd vectorize(const OperatorMatrix& rho) {
    const Eigen::MatrixXcd& e = rho.entries();
    return Eigen::Map<const Eigen::VectorXcd>(e.data(), e.size());
}

OperatorMatrix devectorize(const ExcitationBasis& basis, const Eigen::VectorXcd& v) {
    const auto d = static_cast<Index>(basis.dim());
    if (v.size() != d * d) throw std::invalid_argument("devectorize: length does not match basis");
    return OperatorMatrix(basis, Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d));
}

Eigen::MatrixXcd left_multiplication(const OperatorMatrix& a) {
    Eigen::MatrixXcd out = zero_superop(a.basis());
    add_kron(out, identity_like(a), a.entries(), 1.0);
    return out;
}

Eigen::MatrixXcd right_multiplication(const OperatorMatrix& a) {
    Eigen::MatrixXcd out = zero_superop(a.basis());
    add_kron(out, a.entries().transpose(), identity_like(a), 1.0);
    return out;
}

Eigen::MatrixXcd sandwich(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.basis() == b.basis())) throw std::invalid_argument("sandwich: basis mismatch");
    Eigen::MatrixXcd out = zero_superop(a.basis());
    add_kron(out, b.entries().transpose(), a.entries(), 1.0);
    return out;
}

OperatorMatrix dissipator(const OperatorMatrix& s, const OperatorMatrix& rho) {
    if (!(s.basis() == rho.basis())) {
        throw std::invalid_argument("dissipator: jump operator dim " + std::to_string(s.dim()) +
                                    " does not match rho dim " + std::to_string(rho.dim()));
    }
    const OperatorMatrix sd = s.adjoint();
    const OperatorMatrix sds = sd * s;
    return s * rho * sd - 0.5 * anticommutator(sds, rho);
}

Superoperator build_liouvillian(const OperatorMatrix& h, std::span<const JumpChannel> channels) {
    if (!h.is_hermitian()) throw std::invalid_argument("build_liouvillian: Hamiltonian is not Hermitian");
    const ExcitationBasis& basis = h.basis();
    const Eigen::MatrixXcd id = identity_like(h);
    Eigen::MatrixXcd l = zero_superop(basis);

    const cplx minus_i(0.0, -1.0);
    add_kron(l, id, h.entries(), minus_i);
    add_kron(l, h.entries().transpose(), id, -minus_i);

    for (const JumpChannel& ch : channels) {
        if (!(ch.op.basis() == basis)) throw std::invalid_argument("build_liouvillian: channel basis mismatch");
        if (!std::isfinite(ch.rate) || ch.rate < 0.0) {
            throw std::invalid_argument("build_liouvillian: channel rate must be finite and >= 0");
        }
        const Eigen::MatrixXcd& s = ch.op.entries();
        const Eigen::MatrixXcd sds = s.adjoint() * s;
        add_kron(l, s.conjugate(), s, ch.rate);
        add_kron(l, id, sds, -0.5 * ch.rate);
        add_kron(l, sds.transpose(), id, -0.5 * ch.rate);
    }
    return Superoperator(basis, std::move(l));
}

std::vector<JumpChannel> model_channels(const ChainModel& model) {
    model.validate();
    const ExcitationBasis basis = model.basis();
    std::vector<JumpChannel> channels;
    channels.reserve(2 * model.n_molecules + 2);
    for (std::size_t m = 1; m <= model.n_molecules; ++m) {
        channels.push_back({model.gamma_d(), lowering_op(basis, m)});
    }
    for (std::size_t m = 1; m <= model.n_molecules; ++m) {
        channels.push_back({model.gamma_phi, raising_op(basis, m) * lowering_op(basis, m)});
    }
    channels.push_back({model.kappa, cavity_annihilation(basis)});
    channels.push_back({model.gamma_p, raising_op(basis, 1)});
    return channels;
}

OperatorMatrix feedback_unitary(const ExcitationBasis& basis, std::size_t target, double lambda) {
    const auto t = static_cast<Index>(basis.molecule(target));
    if (!std::isfinite(lambda)) throw std::invalid_argument("feedback_unitary: lambda must be finite");
    const auto [c, s] = cos_sin_pi(lambda);
    OperatorMatrix u = OperatorMatrix::identity(basis);
    Eigen::MatrixXcd e = u.entries();
    e(0, 0) = c;
    e(t, t) = c;
    e(0, t) = cplx(0.0, -s);
    e(t, 0) = cplx(0.0, -s);
    return OperatorMatrix(basis, std::move(e));
}

std::vector<JumpChannel> feedback_channels(const ChainModel& model, std::size_t target, double lambda,
                                           double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("feedback: eta must lie in [0, 1]");
    if (!(lambda >= 0.0)) throw std::invalid_argument("feedback: lambda must be >= 0");
    std::vector<JumpChannel> plain = model_channels(model);
    const ExcitationBasis basis = model.basis();
    const OperatorMatrix a = cavity_annihilation(basis);
    const OperatorMatrix dressed = feedback_unitary(basis, target, lambda) * a;

    std::vector<JumpChannel> channels;
    channels.reserve(plain.size() + 1);
    for (JumpChannel& ch : plain) {
        if (ch.op.entries() == a.entries()) {
            channels.push_back({model.kappa * eta, dressed});
            channels.push_back({model.kappa * (1.0 - eta), a});
        } else {
            channels.push_back(std::move(ch));
        }
    }
    return channels;
}

Superoperator build_feedback_liouvillian(const OperatorMatrix& h, const ChainModel& model, std::size_t target,
                                         double lambda, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("feedback: eta must lie in [0, 1]");
    if (eta == 0.0) return build_liouvillian(h, model_channels(model));
    return build_liouvillian(h, feedback_channels(model, target, lambda, eta));
}

Superoperator build_model_liouvillian(const ChainModel& model) {
    const OperatorMatrix h = build_hamiltonian(model);
    if (!model.feedback.enabled) return build_liouvillian(h, model_channels(model));
    return build_feedback_liouvillian(h, model, model.feedback_target(), model.feedback.lambda, model.feedback.eta);
}

SteadyState steady_state(const Superoperator& l, const SteadyStateOptions& options) {
    const ExcitationBasis& basis = l.basis();
    const auto d = static_cast<Index>(basis.dim());
    const Index n = d * d;
    const Eigen::MatrixXcd& lm = l.entries();

    // The generator maps Hermitian matrices to Hermitian matrices, so the
    // problem is posed in real coordinates: D populations followed by
    // (Re, Im) of each upper-triangular coherence.
    struct Coord {
        Index i;
        Index j;
        bool imag;
    };
    std::vector<Coord> coords;
    coords.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < d; ++i) coords.push_back({i, i, false});
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            coords.push_back({i, j, false});
            coords.push_back({i, j, true});
        }
    }
    auto vec_index = [d](Index i, Index j) { return i + j * d; };

    Eigen::MatrixXd m(n, n);
    Eigen::VectorXcd column(n);
    for (Index k = 0; k < n; ++k) {
        const Coord& c = coords[static_cast<std::size_t>(k)];
        if (c.i == c.j) {
            column = lm.col(vec_index(c.i, c.i));
        } else if (!c.imag) {
            column = lm.col(vec_index(c.i, c.j)) + lm.col(vec_index(c.j, c.i));
        } else {
            const cplx i_unit(0.0, 1.0);
            column = i_unit * (lm.col(vec_index(c.i, c.j)) - lm.col(vec_index(c.j, c.i)));
        }
        for (Index r = 0; r < n; ++r) {
            const Coord& out = coords[static_cast<std::size_t>(r)];
            const cplx value = column(vec_index(out.i, out.j));
            m(r, k) = out.imag ? value.imag() : value.real();
        }
    }

    // Populations sum to a conserved trace, so the ground-population row is
    // redundant; replace it by tr(rho) = 1.
    m.row(0).setZero();
    m.row(0).head(d).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    SteadyState result{OperatorMatrix(basis)};
    // Eigen's rcond estimate is unreliable once a pivot is exactly zero, so
    // the pivot spread of U is checked as well.
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
    result.rcond = std::min(lu.rcond(), pivot_ratio);
    if (!std::isfinite(result.rcond) || result.rcond < options.min_rcond) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", result.rcond);
        throw DegenerateSteadyState(std::string("steady_state: bordered Liouvillian is singular (rcond ") + buf +
                                    "); null space is not one-dimensional");
    }
    const Eigen::VectorXd x = lu.solve(rhs);
    if (!x.allFinite()) throw DegenerateSteadyState("steady_state: non-finite solution");

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (Index k = 0; k < n; ++k) {
        const Coord& c = coords[static_cast<std::size_t>(k)];
        if (c.i == c.j) {
            rho(c.i, c.i) += x(k);
        } else if (!c.imag) {
            rho(c.i, c.j) += x(k);
            rho(c.j, c.i) += x(k);
        } else {
            rho(c.i, c.j) += cplx(0.0, x(k));
            rho(c.j, c.i) -= cplx(0.0, x(k));
        }
    }
    result.rho = OperatorMatrix(basis, std::move(rho));

    result.residual_norm = (lm * vectorize(result.rho)).norm();
    if (!(result.residual_norm <= options.residual_tol)) {
        throw ConvergenceError("steady_state: residual " + std::to_string(result.residual_norm) +
                               " exceeds tolerance");
    }
    if (!result.rho.is_hermitian(options.hermiticity_tol)) {
        throw ConvergenceError("steady_state: solution is not Hermitian");
    }
    const double trace_error = std::abs(result.rho.trace() - 1.0);
    if (trace_error > 1e-12) {
        throw ConvergenceError("steady_state: trace deviates from 1 by " + std::to_string(trace_error));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(result.rho.entries(), Eigen::EigenvaluesOnly);
    result.min_eigenvalue = eig.eigenvalues().minCoeff();
    if (result.min_eigenvalue < options.positivity_tol) {
        throw ConvergenceError("steady_state: negative eigenvalue " + std::to_string(result.min_eigenvalue));
    }

    if (options.audit_uniqueness) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(lm);
        const Eigen::VectorXd& s = svd.singularValues();  // descending
        result.nullity_checked = true;
        result.singular_gap = s.size() >= 2 ? s(s.size() - 2) / s(0) : 1.0;
        result.unique = result.singular_gap > options.uniqueness_tol;
        if (!result.unique) {
            throw DegenerateSteadyState("steady_state: second-smallest singular value ratio " +
                                        std::to_string(result.singular_gap) + " indicates nullity > 1");
        }
    }
    return result;
}

OperatorMatrix propagate(const Superoperator& l, const OperatorMatrix& rho0, double t) {
    if (!(rho0.basis() == l.basis())) throw std::invalid_argument("propagate: basis mismatch");
    if (t == 0.0) return rho0;
    const Eigen::MatrixXcd generator = l.entries() * t;
    const Eigen::VectorXcd out = matrix_exponential(generator) * vectorize(rho0);
    return devectorize(l.basis(), out);
}

}  // namespace excitonfb
