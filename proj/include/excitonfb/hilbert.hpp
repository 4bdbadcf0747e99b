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

// hilbert.hpp: truncated Hilbert space of a molecular chain in a single-mode
// cavity: global ground state, one molecular exciton, or one cavity photon.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace excitonfb {

using cplx = std::complex<double>;

// Basis ordering: 0 = |G,0>, 1..N = |e_m,0>, N+1 = |G,1>.
class ExcitationBasis {
 public:
    explicit ExcitationBasis(std::size_t n_molecules);

    std::size_t n_molecules() const noexcept { return n_molecules_; }
    std::size_t dim() const noexcept { return n_molecules_ + 2; }

    static constexpr std::size_t ground() noexcept { return 0; }
    // m is 1-based; throws std::invalid_argument when out of range.
    std::size_t molecule(std::size_t m) const;
    std::size_t photon() const noexcept { return n_molecules_ + 1; }

    friend bool operator==(const ExcitationBasis&, const ExcitationBasis&) = default;

 private:
    std::size_t n_molecules_;
};

ExcitationBasis make_basis(std::size_t n_molecules);

// Dense complex operator on the truncated space.
class OperatorMatrix {
 public:
    explicit OperatorMatrix(const ExcitationBasis& basis);  // zero operator
    OperatorMatrix(const ExcitationBasis& basis, Eigen::MatrixXcd entries);

    static OperatorMatrix identity(const ExcitationBasis& basis);

    const ExcitationBasis& basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return basis_.dim(); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

    cplx operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    OperatorMatrix adjoint() const;
    cplx trace() const { return entries_.trace(); }
    double max_abs() const;
    // max |A - A^dagger| <= rel_tol * max(1, max|A|)
    bool is_hermitian(double rel_tol = 1e-14) const;

    OperatorMatrix& operator+=(const OperatorMatrix& rhs);
    OperatorMatrix& operator-=(const OperatorMatrix& rhs);
    OperatorMatrix& operator*=(cplx scale);

    friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
    friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
    friend OperatorMatrix operator*(OperatorMatrix lhs, cplx scale) { return lhs *= scale; }
    friend OperatorMatrix operator*(cplx scale, OperatorMatrix rhs) { return rhs *= scale; }
    friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

 private:
    ExcitationBasis basis_;
    Eigen::MatrixXcd entries_;
};

// sigma_m^- : |e_m,0> -> |G,0>
OperatorMatrix lowering_op(const ExcitationBasis& basis, std::size_t m);
// sigma_m^+ : |G,0> -> |e_m,0>
OperatorMatrix raising_op(const ExcitationBasis& basis, std::size_t m);
// a : |G,1> -> |G,0>
OperatorMatrix cavity_annihilation(const ExcitationBasis& basis);
// sigma_m^x = sigma_m^+ + sigma_m^-, projected onto the truncated space.
OperatorMatrix sigma_x(const ExcitationBasis& basis, std::size_t m);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);

// exp(scale * A), Pade scaling and squaring.
OperatorMatrix matrix_exponential(const OperatorMatrix& a, cplx scale = 1.0);
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

}  // namespace excitonfb
