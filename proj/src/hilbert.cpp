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

#include "excitonfb/hilbert.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace excitonfb {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

OperatorMatrix single_entry(const ExcitationBasis& basis, std::size_t row, std::size_t col) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(idx(basis.dim()), idx(basis.dim()));
    e(idx(row), idx(col)) = 1.0;
    return OperatorMatrix(basis, std::move(e));
}

void require_same_basis(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
    if (!(a.basis() == b.basis())) {
        throw std::invalid_argument(std::string(what) + ": operators act on different bases (dim " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

}  // namespace

ExcitationBasis::ExcitationBasis(std::size_t n_molecules) : n_molecules_(n_molecules) {
    if (n_molecules == 0) {
        throw std::invalid_argument("ExcitationBasis: n_molecules must be >= 1");
    }
}

std::size_t ExcitationBasis::molecule(std::size_t m) const {
    if (m < 1 || m > n_molecules_) {
        throw std::invalid_argument("molecule index " + std::to_string(m) + " outside 1.." +
                                    std::to_string(n_molecules_));
    }
    return m;
}

ExcitationBasis make_basis(std::size_t n_molecules) { return ExcitationBasis(n_molecules); }

OperatorMatrix::OperatorMatrix(const ExcitationBasis& basis)
    : basis_(basis), entries_(Eigen::MatrixXcd::Zero(idx(basis.dim()), idx(basis.dim()))) {}

OperatorMatrix::OperatorMatrix(const ExcitationBasis& basis, Eigen::MatrixXcd entries)
    : basis_(basis), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() != idx(basis_.dim())) {
        throw std::invalid_argument("OperatorMatrix: entries are " + std::to_string(entries_.rows()) + "x" +
                                    std::to_string(entries_.cols()) + ", basis dim is " +
                                    std::to_string(basis_.dim()));
    }
}

OperatorMatrix OperatorMatrix::identity(const ExcitationBasis& basis) {
    return OperatorMatrix(basis, Eigen::MatrixXcd::Identity(idx(basis.dim()), idx(basis.dim())));
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(basis_, entries_.adjoint()); }

double OperatorMatrix::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

bool OperatorMatrix::is_hermitian(double rel_tol) const {
    const double scale = std::max(1.0, max_abs());
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
    require_same_basis(*this, rhs, "operator+");
    entries_ += rhs.entries_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
    require_same_basis(*this, rhs, "operator-");
    entries_ -= rhs.entries_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx scale) {
    entries_ *= scale;
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    require_same_basis(lhs, rhs, "operator*");
    return OperatorMatrix(lhs.basis_, lhs.entries_ * rhs.entries_);
}

OperatorMatrix lowering_op(const ExcitationBasis& basis, std::size_t m) {
    return single_entry(basis, ExcitationBasis::ground(), basis.molecule(m));
}

OperatorMatrix raising_op(const ExcitationBasis& basis, std::size_t m) {
    return single_entry(basis, basis.molecule(m), ExcitationBasis::ground());
}

OperatorMatrix cavity_annihilation(const ExcitationBasis& basis) {
    return single_entry(basis, ExcitationBasis::ground(), basis.photon());
}

OperatorMatrix sigma_x(const ExcitationBasis& basis, std::size_t m) {
    return raising_op(basis, m) + lowering_op(basis, m);
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b + b * a; }

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("matrix_exponential: matrix is not square");
    }
    return a.exp();
}

OperatorMatrix matrix_exponential(const OperatorMatrix& a, cplx scale) {
    return OperatorMatrix(a.basis(), matrix_exponential(Eigen::MatrixXcd(scale * a.entries())));
}

}  // namespace excitonfb
