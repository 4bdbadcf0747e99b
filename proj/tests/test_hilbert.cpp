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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "excitonfb/hilbert.hpp"

using namespace excitonfb;

namespace {

Eigen::MatrixXcd random_matrix(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(n(rng), n(rng));
    return a;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("basis dimension and ordering") {
    CHECK(make_basis(1).dim() == 3);
    CHECK(make_basis(60).dim() == 62);
    CHECK_THROWS_AS(make_basis(0), std::invalid_argument);

    const ExcitationBasis b(4);
    CHECK(b.ground() == 0);
    for (std::size_t m = 1; m <= 4; ++m) CHECK(b.molecule(m) == m);
    CHECK(b.photon() == 5);
    CHECK_THROWS_AS(b.molecule(0), std::invalid_argument);
    CHECK_THROWS_AS(b.molecule(5), std::invalid_argument);
}

TEST_CASE("lowering operator") {
    const ExcitationBasis b(1);
    const OperatorMatrix s = lowering_op(b, 1);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(0, 1) = 1.0;
    CHECK(s.entries() == expected);

    const ExcitationBasis b5(5);
    for (std::size_t m = 1; m <= 5; ++m) {
        const OperatorMatrix lo = lowering_op(b5, m);
        CHECK(max_abs((lo * lo).entries()) == 0.0);
        CHECK(lo.adjoint().entries() == raising_op(b5, m).entries());
        // sigma^- sigma^+ maps |G,0> back to itself; sigma^+ sigma^- projects on |e_m,0>
        const OperatorMatrix proj = raising_op(b5, m) * lo;
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(7, 7);
        p(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) = 1.0;
        CHECK(proj.entries() == p);
    }
    CHECK_THROWS_AS(lowering_op(b5, 6), std::invalid_argument);
    CHECK_THROWS_AS(raising_op(b5, 0), std::invalid_argument);
}

TEST_CASE("cavity annihilation") {
    const OperatorMatrix a1 = cavity_annihilation(ExcitationBasis(1));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(0, 2) = 1.0;
    CHECK(a1.entries() == expected);

    const ExcitationBasis b(6);
    const OperatorMatrix a = cavity_annihilation(b);
    CHECK(max_abs((a * a).entries()) == 0.0);
    const Eigen::MatrixXcd n = (a.adjoint() * a).entries();
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(8);
    diag(7) = 1.0;
    CHECK(n.diagonal() == diag);
    CHECK(max_abs(n - Eigen::MatrixXcd(n.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("projected sigma_x") {
    const ExcitationBasis b(3);
    const OperatorMatrix x = sigma_x(b, 3);
    CHECK(x(0, 3) == cplx(1.0));
    CHECK(x(3, 0) == cplx(1.0));
    CHECK(max_abs(x.entries()) == 1.0);
    CHECK(x.entries().cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("operator algebra") {
    std::mt19937_64 rng(5);
    const ExcitationBasis b(3);
    for (int k = 0; k < 20; ++k) {
        const OperatorMatrix a(b, random_matrix(5, rng));
        const OperatorMatrix c(b, random_matrix(5, rng));
        CHECK(a.adjoint().adjoint().entries() == a.entries());
        CHECK(max_abs((a * c).adjoint().entries() - (c.adjoint() * a.adjoint()).entries()) < 1e-13);
        CHECK(max_abs(commutator(a, c).entries() - (a * c - c * a).entries()) < 1e-13);
        CHECK(max_abs(anticommutator(a, c).entries() - (a * c + c * a).entries()) < 1e-13);
    }
    CHECK_THROWS_AS(OperatorMatrix(b, Eigen::MatrixXcd::Zero(4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(OperatorMatrix(b) + OperatorMatrix(ExcitationBasis(2)), std::invalid_argument);

    Eigen::MatrixXcd h = random_matrix(5, rng);
    h = (h + h.adjoint()).eval();
    CHECK(OperatorMatrix(b, h).is_hermitian());
    h(0, 1) += 1e-6;
    CHECK_FALSE(OperatorMatrix(b, h).is_hermitian());
}

TEST_CASE("matrix exponential") {
    const ExcitationBasis b(2);
    std::mt19937_64 rng(9);
    const OperatorMatrix a(b, random_matrix(4, rng));
    CHECK(max_abs(matrix_exponential(a, 0.0).entries() - Eigen::MatrixXcd::Identity(4, 4)) < 1e-15);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    const cplx vals[] = {cplx(0.3, 1.0), cplx(-2.0, 0.0), cplx(0.0, -0.7), cplx(1.5, 0.2)};
    for (int i = 0; i < 4; ++i) d(i, i) = vals[i];
    const Eigen::MatrixXcd ed = matrix_exponential(OperatorMatrix(b, d)).entries();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ed(i, i) - std::exp(vals[i])) < 1e-13 * std::abs(std::exp(vals[i])));

    // exp(-i pi sigma_x) on the {|G,0>, |e_1,0>} block is -1 there, identity elsewhere.
    const Eigen::MatrixXcd u = matrix_exponential(sigma_x(b, 1), cplx(0.0, -std::numbers::pi)).entries();
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(4, 4);
    expected(0, 0) = -1.0;
    expected(1, 1) = -1.0;
    CHECK(max_abs(u - expected) < 1e-14);

    // exp(A) exp(-A) = I for random Hermitian A with spectral norm 10. For the
    // unitary pair exp(+-iA) the product is checked to 1e-10 outright; for the
    // real pair the factors have norm e^10 and the product cancels terms of
    // size e^20, so round-off alone is of order eps * e^20 ~ 1e-7.
    const ExcitationBasis b6(6);
    for (int k = 0; k < 10; ++k) {
        Eigen::MatrixXcd h = random_matrix(8, rng);
        h = (h + h.adjoint()).eval();
        const double norm = Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues()(0);
        h *= 10.0 / norm;
        const OperatorMatrix ha(b6, h);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8);
        const Eigen::MatrixXcd unitary =
            matrix_exponential(ha, cplx(0.0, 1.0)).entries() * matrix_exponential(ha, cplx(0.0, -1.0)).entries();
        CHECK(max_abs(unitary - id) < 1e-10);
        const Eigen::MatrixXcd real = matrix_exponential(ha).entries() * matrix_exponential(ha, -1.0).entries();
        CHECK(max_abs(real - id) < std::numeric_limits<double>::epsilon() * std::exp(20.0));
    }
}
