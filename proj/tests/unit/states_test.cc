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

#include <gtest/gtest.h>

#include <cmath>

#include "entcert/error.hpp"

using namespace entcert;
using namespace entcert::hilbert;
using namespace entcert::states;

TEST(ToDensity, single_term_is_product) {
    const auto s = ConvexSumState({{1.0, qubit_up(), qubit_planar(0.3)}});
    EXPECT_EQ(to_density(s).matrix(), tensor_product(qubit_up(), qubit_planar(0.3)).matrix());
}

TEST(ToDensity, classical_mixture_of_aligned_spins) {
    const auto s = ConvexSumState({{0.5, qubit_up(), qubit_up()}, {0.5, qubit_down(), qubit_down()}});
    EXPECT_EQ(to_density(s).matrix(), ComplexMatrix::diagonal({0.5, 0, 0, 0.5}));
}

TEST(ToDensity, dice_weights_give_diagonal_density) {
    // Bernoulli(1/2) pair with weight 1/4, Bernoulli(2/3) pair with weight 3/4.
    auto bern = [](double p) { return DensityOperator(ComplexMatrix::diagonal({1 - p, p}), TensorStructure({2})); };
    const auto rho = to_density(ConvexSumState({{0.25, bern(0.5), bern(0.5)}, {0.75, bern(2.0 / 3), bern(2.0 / 3)}}));
    const std::vector<double> diag{0.25 * 0.25 + 0.75 / 9, 0.25 * 0.25 + 0.75 * 2 / 9, 0.25 * 0.25 + 0.75 * 2 / 9,
                                   0.25 * 0.25 + 0.75 * 4 / 9};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(rho.matrix()(i, j) - (i == j ? diag[i] : 0.0)), 0.0, 1e-15);
}

TEST(ConvexSumState, rejects_bad_weights_and_dims) {
    EXPECT_THROW(ConvexSumState({{0.5, qubit_up(), qubit_up()}, {0.6, qubit_up(), qubit_up()}}), PreconditionError);
    EXPECT_THROW(ConvexSumState({{1.0, qubit_up(), qubit_up()}, {0.0, qubit_up(), qubit_up()}}), PreconditionError);
    const DensityOperator qutrit = DensityOperator::maximally_mixed(TensorStructure({3}));
    EXPECT_THROW(ConvexSumState({{0.5, qubit_up(), qubit_up()}, {0.5, qutrit, qubit_up()}}), DimensionError);
}

TEST(Singlet, properties) {
    const auto s = singlet();
    EXPECT_NEAR(s.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(s.purity(), 1.0, 1e-15);
    EXPECT_NEAR(expectation(s, tensor_product(pauli::z(), pauli::z())), -1.0, 1e-15);
    EXPECT_NEAR(expectation(s, lift_local(pauli::z(), 0, s.structure())), 0.0, 1e-15);
}

TEST(Werner, limits_and_validation) {
    EXPECT_EQ(werner(0.0).matrix(), ComplexMatrix::identity(4) * Complex{0.25});
    EXPECT_LE(max_abs_diff(werner(1.0).matrix(), singlet().matrix()), 1e-16);
    EXPECT_THROW(werner(-0.1), PreconditionError);
    EXPECT_THROW(werner(1.1), PreconditionError);
}

TEST(Negativity, examples) {
    EXPECT_NEAR(negativity(singlet()), 0.5, 1e-12);
    EXPECT_NEAR(negativity(werner(1.0 / 3.0)), 0.0, 1e-12);
    EXPECT_NEAR(negativity(werner(0.5)), 0.125, 1e-12);
}

TEST(Negativity, werner_matches_partial_transpose_closed_form) {
    for (int k = 0; k <= 20; ++k) {
        const double w = 0.05 * k;
        // Partial-transpose minimum eigenvalue is (1 - 3w)/4.
        EXPECT_NEAR(eigen_hermitian(partial_transpose(werner(w), 1)).eigenvalues.front(), (1.0 - 3.0 * w) / 4.0, 1e-12);
        EXPECT_NEAR(negativity(werner(w)), std::max(0.0, (3.0 * w - 1.0) / 4.0), 1e-12);
    }
}

TEST(Negativity, werner_entangled_exactly_above_one_third) {
    for (int k = 0; k <= 20; ++k) {
        const double w = 0.05 * k;
        EXPECT_EQ(is_entangled(werner(w)), w > 1.0 / 3.0 + 1e-9) << "w=" << w;
    }
}

TEST(Negativity, requires_bipartite) {
    EXPECT_THROW(negativity(DensityOperator::maximally_mixed(TensorStructure({2, 2, 2}))), PreconditionError);
}

TEST(ConvexSumState, random_images_are_valid_and_ppt) {
    rng::Stream s(31, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto cs = random_convex_sum(s, 6);
        const auto rho = to_density(cs);  // validates trace, hermiticity, positivity
        worst = std::max(worst, negativity(rho));
    }
    EXPECT_LE(worst, 1e-9);
}

TEST(ConvexSumState, correlation_bridge) {
    rng::Stream s(32, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto cs = random_convex_sum(s, 6);
        ComplexMatrix ga(2, 2), gb(2, 2);
        for (auto* g : {&ga, &gb})
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) (*g)(i, j) = Complex{s.normal(), s.normal()};
        const HermitianOperator a((ga + ga.adjoint()) * Complex{0.5});
        const HermitianOperator b((gb + gb.adjoint()) * Complex{0.5});
        const auto rho = to_density(cs);
        const auto ab = tensor_product(a, b);
        EXPECT_NEAR(convex_sum_correlation(cs, a, b), expectation(rho, ab), 1e-10);
    }
}
