// Copyright 2026 The entcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entcert/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>

#include "entcert/error.hpp"

namespace entcert::hilbert {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

void require_dim(const DensityOperator& rho, const HermitianOperator& obs, const char* what) {
    if (rho.dim() != obs.dim()) {
        throw DimensionError(std::string(what) + ": state dimension " + std::to_string(rho.dim()) +
                             " but observable dimension " + std::to_string(obs.dim()));
    }
}

void require_bipartite(const TensorStructure& s, const char* what) {
    if (s.factor_count() != 2) {
        throw PreconditionError(std::string(what) + ": requires a bipartite structure, got " +
                                std::to_string(s.factor_count()) + " factors");
    }
}

double hermiticity_defect(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

// Site an operator acts on nontrivially, if it is X (x) I or I (x) X.
std::optional<std::size_t> local_site(const ComplexMatrix& op, const TensorStructure& s, double tol) {
    const std::size_t d0 = s.factor_dim(0);
    const std::size_t d1 = s.factor_dim(1);
    ComplexMatrix left(d0, d0);
    ComplexMatrix right(d1, d1);
    for (std::size_t i = 0; i < d0; ++i)
        for (std::size_t j = 0; j < d0; ++j)
            for (std::size_t k = 0; k < d1; ++k) left(i, j) += op(i * d1 + k, j * d1 + k) / double(d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            for (std::size_t k = 0; k < d0; ++k) right(i, j) += op(k * d1 + i, k * d1 + j) / double(d0);
    if (max_abs_diff(op, tensor_product(left, ComplexMatrix::identity(d1))) <= tol) return 0;
    if (max_abs_diff(op, tensor_product(ComplexMatrix::identity(d0), right)) <= tol) return 1;
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("ComplexMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                             std::to_string(entries_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix out(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace of a non-square matrix");
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
    return sum;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix sum");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix difference");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
    for (auto& e : entries_) e *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

double max_abs(const ComplexMatrix& a) noexcept {
    double worst = 0.0;
    for (const auto& e : a.entries()) worst = std::max(worst, std::abs(e));
    return worst;
}

// ---------------------------------------------------------------------------
// TensorStructure

TensorStructure::TensorStructure(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw DimensionError("TensorStructure: no factors");
    for (auto d : dims_) {
        if (d < 2) throw DimensionError("TensorStructure: factor dimension must be >= 2, got " + std::to_string(d));
    }
}

std::size_t TensorStructure::factor_dim(std::size_t site) const {
    if (site >= dims_.size()) {
        throw DimensionError("site " + std::to_string(site) + " out of range for " + std::to_string(dims_.size()) +
                             " factors");
    }
    return dims_[site];
}

std::size_t TensorStructure::total_dim() const noexcept {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

TensorStructure TensorStructure::concat(const TensorStructure& other) const {
    std::vector<std::size_t> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    return TensorStructure(std::move(dims));
}

// ---------------------------------------------------------------------------
// HermitianOperator / DensityOperator

HermitianOperator::HermitianOperator(ComplexMatrix matrix, double hermiticity_tol) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() == 0) throw DimensionError("HermitianOperator: matrix must be square");
    const double defect = hermiticity_defect(matrix_);
    if (defect > hermiticity_tol) {
        throw PreconditionError("HermitianOperator: hermiticity defect " + std::to_string(defect) +
                                " exceeds tolerance");
    }
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.matrix_ + b.matrix_);
}

HermitianOperator operator*(double s, const HermitianOperator& a) { return HermitianOperator(a.matrix_ * Complex{s}); }

DensityOperator::DensityOperator(ComplexMatrix matrix, TensorStructure structure, const Tolerances& tol)
    : matrix_(std::move(matrix)), structure_(std::move(structure)) {
    if (!matrix_.is_square()) throw DimensionError("DensityOperator: matrix must be square");
    if (matrix_.rows() != structure_.total_dim()) {
        throw DimensionError("DensityOperator: matrix dimension " + std::to_string(matrix_.rows()) +
                             " does not match tensor structure dimension " + std::to_string(structure_.total_dim()));
    }
    if (hermiticity_defect(matrix_) > tol.hermiticity) throw PreconditionError("DensityOperator: not Hermitian");
    const Complex tr = matrix_.trace();
    if (std::abs(tr.real() - 1.0) > tol.trace || std::abs(tr.imag()) > tol.trace) {
        throw PreconditionError("DensityOperator: trace " + std::to_string(tr.real()) + " is not 1");
    }
    const auto eig = eigen_hermitian(matrix_, tol.hermiticity);
    if (eig.eigenvalues.front() < -tol.psd) {
        throw PreconditionError("DensityOperator: negative eigenvalue " + std::to_string(eig.eigenvalues.front()));
    }
}

DensityOperator DensityOperator::pure(std::span<const Complex> psi, TensorStructure structure, const Tolerances& tol) {
    return DensityOperator(ComplexMatrix::outer(psi), std::move(structure), tol);
}

DensityOperator DensityOperator::maximally_mixed(TensorStructure structure) {
    const std::size_t d = structure.total_dim();
    return DensityOperator(ComplexMatrix::identity(d) * Complex{1.0 / double(d)}, std::move(structure));
}

double DensityOperator::purity() const { return trace_product(matrix_, matrix_).real(); }

// ---------------------------------------------------------------------------
// Named operators

namespace pauli {
HermitianOperator x() { return HermitianOperator(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}); }
HermitianOperator y() {
    return HermitianOperator(ComplexMatrix{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}});
}
HermitianOperator z() { return HermitianOperator(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}); }
HermitianOperator identity(std::size_t n) { return HermitianOperator(ComplexMatrix::identity(n)); }
}  // namespace pauli

HermitianOperator position_operator(std::size_t levels) {
    if (levels < 2) throw DimensionError("position_operator: need at least 2 levels");
    std::vector<double> x(levels);
    for (std::size_t j = 0; j < levels; ++j) x[j] = double(j) - double(levels - 1) / 2.0;
    return HermitianOperator(ComplexMatrix::diagonal(x));
}

// ---------------------------------------------------------------------------
// Tensor algebra

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor_product(a.matrix(), b.matrix()));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator(tensor_product(a.matrix(), b.matrix()), a.structure().concat(b.structure()));
}

HermitianOperator lift_local(const HermitianOperator& obs, std::size_t site, const TensorStructure& structure) {
    const std::size_t site_dim = structure.factor_dim(site);
    if (obs.dim() != site_dim) {
        throw DimensionError("lift_local: observable dimension " + std::to_string(obs.dim()) + " but factor " +
                             std::to_string(site) + " has dimension " + std::to_string(site_dim));
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t s = 0; s < structure.factor_count(); ++s) {
        out = tensor_product(out, s == site ? obs.matrix() : ComplexMatrix::identity(structure.factor_dim(s)));
    }
    return HermitianOperator(std::move(out));
}

Complex trace_product(const ComplexMatrix& rho, const ComplexMatrix& m) {
    if (!rho.is_square() || rho.rows() != m.cols() || rho.cols() != m.rows()) {
        throw DimensionError("trace_product: incompatible shapes");
    }
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t k = 0; k < rho.cols(); ++k) sum += rho(i, k) * m(k, i);
    return sum;
}

double expectation(const DensityOperator& rho, const HermitianOperator& obs, const Tolerances& tol) {
    require_dim(rho, obs, "expectation");
    const Complex value = trace_product(rho.matrix(), obs.matrix());
    if (std::abs(value.imag()) > tol.imaginary) {
        throw InvariantViolation("expectation: imaginary part " + std::to_string(value.imag()));
    }
    return value.real();
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a * b - b * a); }

double conditional_covariance(const DensityOperator& rho, const HermitianOperator& a, const HermitianOperator& b,
                              const Tolerances& tol) {
    require_dim(rho, a, "conditional_covariance");
    require_dim(rho, b, "conditional_covariance");
    const double defect = commutator_norm(a.matrix(), b.matrix());
    if (defect > tol.commutation) {
        throw PreconditionError("conditional_covariance: observables do not commute (|[A,B]| = " +
                                std::to_string(defect) + ")");
    }
    // AB is Hermitian only up to the commutator; use the symmetric part.
    const ComplexMatrix ab = (a.matrix() * b.matrix() + b.matrix() * a.matrix()) * Complex{0.5};
    const double e_ab = expectation(rho, HermitianOperator(ab, tol.commutation + tol.hermiticity), tol);
    return e_ab - expectation(rho, a, tol) * expectation(rho, b, tol);
}

double variance(const DensityOperator& rho, const HermitianOperator& a, const Tolerances& tol) {
    const double v = conditional_covariance(rho, a, a, tol);
    if (v < -tol.psd) throw InvariantViolation("variance: negative value " + std::to_string(v));
    return v;
}

double BilinearCovariance::residual() const noexcept { return std::abs(covariance - predicted); }

BilinearCovariance covariance_bilinear(const DensityOperator& rho, double k, double n, double m, double l,
                                       const HermitianOperator& a, const HermitianOperator& b,
                                       const Tolerances& tol) {
    require_dim(rho, a, "covariance_bilinear");
    require_dim(rho, b, "covariance_bilinear");
    require_bipartite(rho.structure(), "covariance_bilinear");
    const auto site_a = local_site(a.matrix(), rho.structure(), tol.hermiticity);
    const auto site_b = local_site(b.matrix(), rho.structure(), tol.hermiticity);
    if (!site_a || !site_b || *site_a == *site_b) {
        throw PreconditionError("covariance_bilinear: observables must be local to distinct sites");
    }
    if (!is_product_state(rho, tol)) throw PreconditionError("covariance_bilinear: state is not a product state");

    const HermitianOperator f = k * a + n * b;
    const HermitianOperator g = m * a + l * b;
    BilinearCovariance out{};
    out.covariance = conditional_covariance(rho, f, g, tol);
    out.variance_a = variance(rho, a, tol);
    out.variance_b = variance(rho, b, tol);
    out.predicted = k * m * out.variance_a + n * l * out.variance_b;
    if (out.residual() > tol.bilinear_identity) {
        throw InvariantViolation("covariance_bilinear: identity residual " + std::to_string(out.residual()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial operations

ComplexMatrix partial_transpose(const ComplexMatrix& m, const TensorStructure& structure, std::size_t site) {
    require_bipartite(structure, "partial_transpose");
    const std::size_t d0 = structure.factor_dim(0);
    const std::size_t d1 = structure.factor_dim(1);
    if (site > 1) throw DimensionError("partial_transpose: site out of range");
    if (m.rows() != d0 * d1 || !m.is_square()) throw DimensionError("partial_transpose: dimension mismatch");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < d0; ++i)
        for (std::size_t k = 0; k < d1; ++k)
            for (std::size_t j = 0; j < d0; ++j)
                for (std::size_t l = 0; l < d1; ++l) {
                    const Complex v = m(i * d1 + k, j * d1 + l);
                    if (site == 0) out(j * d1 + k, i * d1 + l) = v;
                    else out(i * d1 + l, j * d1 + k) = v;
                }
    return out;
}

HermitianOperator partial_transpose(const DensityOperator& rho, std::size_t site) {
    return HermitianOperator(partial_transpose(rho.matrix(), rho.structure(), site));
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep_site, const Tolerances& tol) {
    require_bipartite(rho.structure(), "partial_trace");
    const std::size_t d0 = rho.structure().factor_dim(0);
    const std::size_t d1 = rho.structure().factor_dim(1);
    const std::size_t keep = rho.structure().factor_dim(keep_site);
    ComplexMatrix out(keep, keep);
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t j = 0; j < keep; ++j) {
            Complex sum{};
            if (keep_site == 0) {
                for (std::size_t k = 0; k < d1; ++k) sum += rho.matrix()(i * d1 + k, j * d1 + k);
            } else {
                for (std::size_t k = 0; k < d0; ++k) sum += rho.matrix()(k * d1 + i, k * d1 + j);
            }
            out(i, j) = sum;
        }
    return DensityOperator(std::move(out), TensorStructure({keep}), tol);
}

bool is_product_state(const DensityOperator& rho, const Tolerances& tol) {
    require_bipartite(rho.structure(), "is_product_state");
    const auto left = partial_trace(rho, 0, tol);
    const auto right = partial_trace(rho, 1, tol);
    return max_abs_diff(rho.matrix(), tensor_product(left.matrix(), right.matrix())) <= tol.product_state;
}

}  // namespace entcert::hilbert
