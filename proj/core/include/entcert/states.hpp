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

#ifndef ENTCERT_STATES_HPP
#define ENTCERT_STATES_HPP

#include <cstdint>
#include <vector>

#include "entcert/hilbert.hpp"
#include "entcert/rng.hpp"

namespace entcert::states {

using hilbert::DensityOperator;

/// rho_1 (x) rho_2 (x) ... with single-factor density operators.
class ProductState {
   public:
    explicit ProductState(std::vector<DensityOperator> factors);
    const std::vector<DensityOperator>& factors() const noexcept { return factors_; }
    DensityOperator to_density() const;

   private:
    std::vector<DensityOperator> factors_;
};

struct ConvexTerm {
    double weight;
    DensityOperator left;
    DensityOperator right;
};

/// sum_i p_i rho_i (x) rho~_i. Weights are strictly inside (0, 1) whenever
/// there is more than one term and sum to one.
class ConvexSumState {
   public:
    explicit ConvexSumState(std::vector<ConvexTerm> terms, double weight_tol = 1e-12);

    const std::vector<ConvexTerm>& terms() const noexcept { return terms_; }
    std::size_t left_dim() const noexcept { return terms_.front().left.dim(); }
    std::size_t right_dim() const noexcept { return terms_.front().right.dim(); }

   private:
    std::vector<ConvexTerm> terms_;
};

DensityOperator to_density(const ConvexSumState& s);

/// sum_i p_i E(A|rho_i) E(B|rho~_i) for single-factor observables A, B.
double convex_sum_correlation(const ConvexSumState& s, const hilbert::HermitianOperator& a,
                              const hilbert::HermitianOperator& b);

/// Single-qubit basis projectors and Bloch-vector states.
DensityOperator qubit_up();
DensityOperator qubit_down();
/// Pure state with Bloch vector (sin theta, 0, cos theta) in the z-x plane.
DensityOperator qubit_planar(double theta);
DensityOperator qubit_mixed();

/// Projector onto (|01> - |10>)/sqrt(2).
DensityOperator singlet();

/// w singlet + (1 - w) I/4, w in [0, 1].
DensityOperator werner(double w);

/// Sum of |negative eigenvalues| of the partial transpose on site 1.
double negativity(const DensityOperator& rho);

/// negativity(rho) > tol.
bool is_entangled(const DensityOperator& rho, double tol = 1e-10);

/// Random pure state of dimension `dim` from a normalized complex Gaussian vector.
DensityOperator random_pure(rng::Stream& stream, std::size_t dim);
/// Random convex mixture of `components` random pure states.
DensityOperator random_mixed(rng::Stream& stream, std::size_t dim, std::size_t components);
/// Random weights on the simplex, all strictly positive.
std::vector<double> random_weights(rng::Stream& stream, std::size_t count);
/// Random ConvexSumState with 1..max_terms terms of `dim`-level factors.
ConvexSumState random_convex_sum(rng::Stream& stream, std::size_t max_terms, std::size_t dim = 2);
/// Random two-qubit density: a mixture of 1-4 random pure states (possibly entangled).
DensityOperator random_two_qubit(rng::Stream& stream);

}  // namespace entcert::states

#endif  // ENTCERT_STATES_HPP
