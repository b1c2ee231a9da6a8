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

#include "entcert/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "entcert/error.hpp"

namespace entcert::states {

using hilbert::Complex;
using hilbert::ComplexMatrix;
using hilbert::HermitianOperator;
using hilbert::TensorStructure;

ProductState::ProductState(std::vector<DensityOperator> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw PreconditionError("ProductState: no factors");
    for (const auto& f : factors_) {
        if (f.structure().factor_count() != 1) throw PreconditionError("ProductState: factors must be single-site");
    }
}

DensityOperator ProductState::to_density() const {
    DensityOperator out = factors_.front();
    for (std::size_t i = 1; i < factors_.size(); ++i) out = hilbert::tensor_product(out, factors_[i]);
    return out;
}

ConvexSumState::ConvexSumState(std::vector<ConvexTerm> terms, double weight_tol) : terms_(std::move(terms)) {
    if (terms_.empty()) throw PreconditionError("ConvexSumState: no terms");
    double total = 0.0;
    for (const auto& t : terms_) {
        if (terms_.size() > 1 && !(t.weight > 0.0 && t.weight < 1.0)) {
            throw PreconditionError("ConvexSumState: weight " + std::to_string(t.weight) + " outside (0, 1)");
        }
        if (t.left.structure().factor_count() != 1 || t.right.structure().factor_count() != 1) {
            throw PreconditionError("ConvexSumState: factors must be single-site");
        }
        if (t.left.dim() != terms_.front().left.dim() || t.right.dim() != terms_.front().right.dim()) {
            throw DimensionError("ConvexSumState: inconsistent factor dimensions");
        }
        total += t.weight;
    }
    if (std::abs(total - 1.0) > weight_tol) {
        throw PreconditionError("ConvexSumState: weights sum to " + std::to_string(total));
    }
}

DensityOperator to_density(const ConvexSumState& s) {
    ComplexMatrix sum(s.left_dim() * s.right_dim(), s.left_dim() * s.right_dim());
    for (const auto& t : s.terms()) sum += hilbert::tensor_product(t.left.matrix(), t.right.matrix()) * Complex{t.weight};
    return DensityOperator(std::move(sum), TensorStructure::bipartite(s.left_dim(), s.right_dim()));
}

double convex_sum_correlation(const ConvexSumState& s, const HermitianOperator& a, const HermitianOperator& b) {
    double sum = 0.0;
    for (const auto& t : s.terms()) sum += t.weight * hilbert::expectation(t.left, a) * hilbert::expectation(t.right, b);
    return sum;
}

DensityOperator qubit_up() { return DensityOperator(ComplexMatrix::diagonal({1.0, 0.0}), TensorStructure({2})); }
DensityOperator qubit_down() { return DensityOperator(ComplexMatrix::diagonal({0.0, 1.0}), TensorStructure({2})); }
DensityOperator qubit_mixed() { return DensityOperator::maximally_mixed(TensorStructure({2})); }

DensityOperator qubit_planar(double theta) {
    const std::vector<Complex> psi{std::cos(theta / 2.0), std::sin(theta / 2.0)};
    return DensityOperator::pure(psi, TensorStructure({2}));
}

DensityOperator singlet() {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> psi{0.0, h, -h, 0.0};
    return DensityOperator::pure(psi, TensorStructure::bipartite(2, 2));
}

DensityOperator werner(double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw PreconditionError("werner: parameter " + std::to_string(w) + " outside [0, 1]");
    ComplexMatrix m = singlet().matrix() * Complex{w} + ComplexMatrix::identity(4) * Complex{(1.0 - w) / 4.0};
    return DensityOperator(std::move(m), TensorStructure::bipartite(2, 2));
}

double negativity(const DensityOperator& rho) {
    const auto pt = hilbert::partial_transpose(rho, 1);
    const auto eig = hilbert::eigen_hermitian(pt);
    double sum = 0.0;
    for (double lambda : eig.eigenvalues)
        if (lambda < 0.0) sum -= lambda;
    return sum;
}

bool is_entangled(const DensityOperator& rho, double tol) { return negativity(rho) > tol; }

DensityOperator random_pure(rng::Stream& stream, std::size_t dim) {
    std::vector<Complex> psi(dim);
    double norm2 = 0.0;
    for (auto& c : psi) {
        const double re = stream.normal();
        const double im = stream.normal();
        c = {re, im};
        norm2 += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : psi) c *= inv;
    return DensityOperator::pure(psi, TensorStructure({dim}));
}

std::vector<double> random_weights(rng::Stream& stream, std::size_t count) {
    std::vector<double> w(count);
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log(1.0 - stream.uniform()) + 1e-6;
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

DensityOperator random_mixed(rng::Stream& stream, std::size_t dim, std::size_t components) {
    const auto w = random_weights(stream, components);
    ComplexMatrix sum(dim, dim);
    for (std::size_t i = 0; i < components; ++i) sum += random_pure(stream, dim).matrix() * Complex{w[i]};
    return DensityOperator(std::move(sum), TensorStructure({dim}));
}

ConvexSumState random_convex_sum(rng::Stream& stream, std::size_t max_terms, std::size_t dim) {
    const std::size_t count = 1 + stream.next_u32() % max_terms;
    const auto w = count == 1 ? std::vector<double>{1.0} : random_weights(stream, count);
    std::vector<ConvexTerm> terms;
    terms.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t left_mix = 1 + stream.next_u32() % 2;
        const std::size_t right_mix = 1 + stream.next_u32() % 2;
        terms.push_back({w[i], random_mixed(stream, dim, left_mix), random_mixed(stream, dim, right_mix)});
    }
    return ConvexSumState(std::move(terms));
}

DensityOperator random_two_qubit(rng::Stream& stream) {
    const std::size_t components = 1 + stream.next_u32() % 4;
    const auto mixed = random_mixed(stream, 4, components);
    return DensityOperator(mixed.matrix(), TensorStructure::bipartite(2, 2));
}

}  // namespace entcert::states
