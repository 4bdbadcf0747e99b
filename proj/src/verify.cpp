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

#include "excitonfb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "excitonfb/experiments.hpp"
#include "excitonfb/observables.hpp"

namespace excitonfb {

namespace {

// Rates for the oracle chains, eV. Kept within two decades of each other so
// that t = 100 / min(rate) stays a modest propagation time.
constexpr double kPump = 0.01;
constexpr double kDecay = 0.02;
constexpr double kDephasing = 0.0263;
constexpr double kKappa = 0.1;
constexpr double kRabi = 0.4;

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

double trace_defect(const Superoperator& l) {
    // vec(I)^dagger L: sum of the diagonal-population rows.
    const auto d = static_cast<Eigen::Index>(l.basis().dim());
    Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) acc += l.entries().row(i + i * d);
    return acc.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(n(rng), n(rng));
    }
    return (a + a.adjoint()) / 2.0;
}

OperatorMatrix ground_state(const ExcitationBasis& basis) {
    OperatorMatrix rho(basis);
    Eigen::MatrixXcd e = rho.entries();
    e(0, 0) = 1.0;
    return OperatorMatrix(basis, std::move(e));
}

template <class Fn>
CheckResult timed(const std::string& name, Fn&& fn) {
    CheckResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        fn(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<ChainModel> sample_models() {
    std::vector<ChainModel> models;
    for (std::size_t n : {1u, 2u, 3u, 6u}) {
        ChainModel m = make_chain_model(n, 0.8);
        models.push_back(m);
        models.push_back(channel_model(m, Channel::WeakCoupling));
        models.push_back(channel_model(m, Channel::NoHopping));
        m.feedback = {.enabled = true, .target = 0, .lambda = 0.37, .eta = 0.8};
        models.push_back(m);
    }
    return models;
}

std::vector<JumpChannel> channels_for(const ChainModel& m) {
    return m.feedback.enabled ? feedback_channels(m, m.feedback_target(), m.feedback.lambda, m.feedback.eta)
                              : model_channels(m);
}

}  // namespace

ChainModel OracleConfig::model() const {
    ChainModel m = make_chain_model(n_molecules, cavity ? kRabi : 0.0);
    m.spacing_nm = 2.0;
    m.cavity_coupling_enabled = cavity;
    m.hopping_enabled = hopping;
    m.gamma_p = kPump;
    m.gamma_r = kDecay / 2;
    m.gamma_nr = kDecay / 2;
    m.gamma_phi = kDephasing;
    m.kappa = kKappa;
    m.feedback = {.enabled = feedback, .target = target, .lambda = lambda, .eta = eta};
    return m;
}

std::vector<JumpChannel> OracleConfig::channels() const {
    const ChainModel m = model();
    const ExcitationBasis basis = m.basis();
    std::vector<JumpChannel> out;
    for (std::size_t k = 1; k <= n_molecules; ++k) {
        if (decay) out.push_back({m.gamma_d(), lowering_op(basis, k)});
        if (dephasing) out.push_back({m.gamma_phi, raising_op(basis, k) * lowering_op(basis, k)});
    }
    const OperatorMatrix a = cavity_annihilation(basis);
    if (feedback) {
        out.push_back({m.kappa * eta, feedback_unitary(basis, m.feedback_target(), lambda) * a});
        out.push_back({m.kappa * (1.0 - eta), a});
    } else {
        out.push_back({m.kappa, a});
    }
    if (pump) out.push_back({m.gamma_p, raising_op(basis, 1)});
    return out;
}

double OracleConfig::min_rate() const {
    double r = std::numeric_limits<double>::infinity();
    for (const JumpChannel& ch : channels()) {
        if (ch.rate > 0.0) r = std::min(r, ch.rate);
    }
    return r;
}

std::vector<OracleConfig> oracle_configurations() {
    std::vector<OracleConfig> c;
    auto add = [&](OracleConfig o) { c.push_back(std::move(o)); };
    add({.label = "N1 pump+decay", .n_molecules = 1});
    add({.label = "N1 all channels", .n_molecules = 1, .dephasing = true, .cavity = true});
    add({.label = "N1 no pump", .n_molecules = 1, .pump = false, .dephasing = true, .cavity = true});
    add({.label = "N1 feedback", .n_molecules = 1, .cavity = true, .feedback = true});
    add({.label = "N2 hopping+dephasing", .n_molecules = 2, .dephasing = true, .hopping = true});
    add({.label = "N2 all channels", .n_molecules = 2, .dephasing = true, .cavity = true, .hopping = true});
    add({.label = "N2 feedback eta=1", .n_molecules = 2, .dephasing = true, .cavity = true, .hopping = true,
         .feedback = true});
    add({.label = "N2 feedback eta=0.5 lambda=0.3", .n_molecules = 2, .dephasing = true, .cavity = true,
         .hopping = true, .feedback = true, .lambda = 0.3, .eta = 0.5});
    add({.label = "N3 hopping, no dephasing", .n_molecules = 3, .hopping = true});
    add({.label = "N3 all channels", .n_molecules = 3, .dephasing = true, .cavity = true, .hopping = true});
    add({.label = "N3 feedback", .n_molecules = 3, .dephasing = true, .cavity = true, .hopping = true,
         .feedback = true});
    add({.label = "N3 no hopping, feedback on molecule 2", .n_molecules = 3, .dephasing = true, .cavity = true,
         .feedback = true, .lambda = 0.25, .target = 2});
    return c;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    const LiouvillianBuilder build =
        options.builder ? options.builder
                        : LiouvillianBuilder([](const OperatorMatrix& h, std::span<const JumpChannel> ch) {
                              return build_liouvillian(h, ch);
                          });
    std::vector<CheckResult> results;

    results.push_back(timed("trace preservation", [&](CheckResult& r) {
        double worst = 0.0;
        for (const ChainModel& m : sample_models()) {
            worst = std::max(worst, trace_defect(build(build_hamiltonian(m), channels_for(m))));
        }
        for (const OracleConfig& c : oracle_configurations()) {
            worst = std::max(worst, trace_defect(build(build_hamiltonian(c.model()), c.channels())));
        }
        r.passed = worst <= 1e-12;
        r.detail = "max |vec(I)^+ L| = " + fmt(worst);
    }));

    results.push_back(timed("hermiticity preservation", [&](CheckResult& r) {
        std::mt19937_64 rng(options.seed);
        double worst = 0.0;
        for (const ChainModel& m : sample_models()) {
            if (m.n_molecules != 3) continue;
            const Superoperator l = build(build_hamiltonian(m), channels_for(m));
            for (int k = 0; k < 100; ++k) {
                const OperatorMatrix rho(m.basis(), random_hermitian(static_cast<Eigen::Index>(m.basis().dim()), rng));
                const Eigen::MatrixXcd out = l.apply(rho).entries();
                worst = std::max(worst, (out - out.adjoint()).cwiseAbs().maxCoeff());
            }
        }
        r.passed = worst <= 1e-12;
        r.detail = "max |L[rho] - L[rho]^+| = " + fmt(worst);
    }));

    double min_eig = std::numeric_limits<double>::infinity();
    results.push_back(timed("steady state vs propagation (N <= 3)", [&](CheckResult& r) {
        double worst = 0.0;
        std::string worst_label;
        SteadyStateOptions audit;
        audit.audit_uniqueness = true;
        for (const OracleConfig& c : oracle_configurations()) {
            const OperatorMatrix h = build_hamiltonian(c.model());
            const Superoperator l = build(h, c.channels());
            const SteadyState ss = steady_state(l, audit);
            min_eig = std::min(min_eig, ss.min_eigenvalue);
            const OperatorMatrix late = propagate(l, ground_state(h.basis()), 100.0 / c.min_rate());
            const double diff = (late.entries() - ss.rho.entries()).norm();
            if (diff > worst) {
                worst = diff;
                worst_label = c.label;
            }
        }
        r.passed = worst <= 1e-8;
        r.detail = "12 configurations, max Frobenius diff " + fmt(worst) + " (" + worst_label + ")";
    }));

    results.push_back(timed("analytic two-level population", [&](CheckResult& r) {
        // Dephasing and cavity decay leave the populations of an uncoupled
        // molecule untouched.
        ChainModel m = make_chain_model(1, 0.0);
        m.hopping_enabled = false;
        const SteadyState ss = steady_state(build(build_hamiltonian(m), model_channels(m)));
        const double expected = m.gamma_p / (m.gamma_p + m.gamma_d());
        const double rel = std::abs(ss.rho(1, 1).real() - expected) / expected;
        r.passed = rel <= 1e-10;
        r.detail = "relative error " + fmt(rel);
    }));

    results.push_back(timed("eta = 0 reduces to the plain generator", [&](CheckResult& r) {
        ChainModel m = make_chain_model(6, 0.8);
        const OperatorMatrix h = build_hamiltonian(m);
        const Superoperator plain = build_liouvillian(h, model_channels(m));
        const Superoperator fb = build_feedback_liouvillian(h, m, 6, 0.5, 0.0);
        const double diff = (plain.entries() - fb.entries()).cwiseAbs().maxCoeff();
        r.passed = diff == 0.0;
        r.detail = "max elementwise difference " + fmt(diff);
    }));

    results.push_back(timed("feedback lambda in {0, 1} is a no-op", [&](CheckResult& r) {
        ChainModel m = make_chain_model(6, 0.8);
        const OperatorMatrix h = build_hamiltonian(m);
        const Superoperator plain = build_liouvillian(h, model_channels(m));
        const double diff0 = (build_feedback_liouvillian(h, m, 6, 0.0, 1.0).entries() - plain.entries())
                                 .cwiseAbs()
                                 .maxCoeff();
        const double base = conductance(m).sigma_e;
        m.feedback = {.enabled = true, .target = 0, .lambda = 1.0, .eta = 1.0};
        const double rel1 = std::abs(conductance(m).sigma_e - base) / base;
        r.passed = diff0 <= 1e-14 && rel1 <= 1e-12;
        r.detail = "lambda=0 generator diff " + fmt(diff0) + ", lambda=1 sigma_e rel diff " + fmt(rel1);
    }));

    results.push_back(timed("generator is affine in eta", [&](CheckResult& r) {
        ChainModel m = make_chain_model(4, 0.8);
        const OperatorMatrix h = build_hamiltonian(m);
        const Eigen::MatrixXcd l0 = build(h, feedback_channels(m, 4, 0.37, 0.0)).entries();
        const Eigen::MatrixXcd l1 = build(h, feedback_channels(m, 4, 0.37, 1.0)).entries();
        double worst = 0.0;
        for (double eta : {0.25, 0.5, 0.75}) {
            const Eigen::MatrixXcd le = build(h, feedback_channels(m, 4, 0.37, eta)).entries();
            worst = std::max(worst, (le - ((1.0 - eta) * l0 + eta * l1)).cwiseAbs().maxCoeff());
        }
        r.passed = worst <= 1e-14 * std::max(1.0, l1.cwiseAbs().maxCoeff());
        r.detail = "max deviation " + fmt(worst);
    }));

    results.push_back(timed("feedback unitary is unitary", [&](CheckResult& r) {
        double worst = 0.0;
        for (std::size_t n : {1u, 3u, 10u}) {
            const ExcitationBasis basis(n);
            for (std::size_t t = 1; t <= n; ++t) {
                for (double lambda : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0, 1.5}) {
                    const OperatorMatrix u = feedback_unitary(basis, t, lambda);
                    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.entries().rows(), u.entries().cols());
                    worst = std::max(worst, (u.adjoint().entries() * u.entries() - id).cwiseAbs().maxCoeff());
                }
            }
        }
        r.passed = worst <= 1e-14;
        r.detail = "max |U^+U - I| = " + fmt(worst);
    }));

    results.push_back(timed("steady-state positivity", [&](CheckResult& r) {
        for (const ChainModel& m : sample_models()) {
            min_eig = std::min(min_eig, steady_state(build(build_hamiltonian(m), channels_for(m))).min_eigenvalue);
        }
        r.passed = min_eig >= -1e-10;
        r.detail = "minimum eigenvalue " + fmt(min_eig);
    }));

    results.push_back(timed("linear regime in gamma_p", [&](CheckResult& r) {
        double worst = 0.0;
        for (double omega : {0.0, 1.0}) {
            ChainModel m = make_chain_model(10, omega);
            const double full = conductance(m).sigma_e;
            m.gamma_p /= 2.0;
            const double half = conductance(m).sigma_e;
            worst = std::max(worst, std::abs(half - full) / full);
        }
        r.passed = worst < 0.01;
        r.detail = "max relative change " + fmt(worst) + " at N = 10";
    }));

    results.push_back(timed("seeded sweeps are deterministic", [&](CheckResult& r) {
        SweepSpec spec;
        spec.base = make_chain_model(5, 0.5);
        spec.grid = {0.2, 0.6, 1.0};
        spec.channels = {Channel::Full, Channel::WeakCoupling};
        spec.ensemble = 4;
        spec.seed = options.seed;
        spec.disorder = {.enabled = true, .q = defaults::disorder_q, .fix_ends = true};
        spec.workers = 2;
        const SweepTable a = run_sweep(spec);
        const SweepTable b = run_sweep(spec);
        bool same = a.rows.size() == b.rows.size();
        for (std::size_t i = 0; same && i < a.rows.size(); ++i) {
            same = a.rows[i].stat.mean == b.rows[i].stat.mean && a.rows[i].stat.std_error == b.rows[i].stat.std_error;
        }
        r.passed = same;
        r.detail = same ? "bit-identical over " + std::to_string(a.rows.size()) + " rows" : "tables differ";
    }));

    return results;
}

}  // namespace excitonfb
