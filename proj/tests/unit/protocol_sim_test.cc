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

#include "entcert/protocol_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "entcert/error.hpp"
#include "entcert/rng.hpp"
#include "entcert/stat_tests.hpp"
#include "oracles.hpp"

using namespace entcert;
using namespace entcert::protocol;

namespace {

SignalModel product_model() { return SignalModel({0.5, 0.5}, {0.5, 0.5}, {0, 0, 0, 1}); }

SignalModel constant_model(double c) { return SignalModel({0.3, 0.7}, {0.6, 0.4}, {c, c, c, c}); }

}  // namespace

TEST(TheoreticalMean, examples) {
    EXPECT_DOUBLE_EQ(theoretical_mean(constant_model(2.5)), 2.5);
    EXPECT_DOUBLE_EQ(theoretical_mean(product_model()), 0.25);
    EXPECT_DOUBLE_EQ(theoretical_mean(SignalModel({0, 1}, {1, 0}, {1, 2, 3, 4})), 3.0);
}

TEST(TheoreticalSd, examples) {
    EXPECT_DOUBLE_EQ(theoretical_sd(constant_model(2.5)), 0.0);
    EXPECT_DOUBLE_EQ(theoretical_sd(product_model()), std::sqrt(3.0) / 4.0);
    EXPECT_DOUBLE_EQ(theoretical_sd(SignalModel({0.5, 0.5}, {0.5, 0.5}, {1, -1, -1, 1})), 1.0);
}

TEST(LoopholeDefault, moments_match_exact_rational_values) {
    const auto model = SignalModel::loophole_default();
    // Mean 1018/1023 and sd from exact rational enumeration.
    EXPECT_NEAR(theoretical_mean(model), 1018.0 / 1023.0, 1e-15);
    EXPECT_NEAR(theoretical_sd(model), 1.3933144243546387, 1e-13);
    EXPECT_NEAR(oracle::decompose_fixed_m(model).between_var, 0.475538183843926, 1e-13);
}

TEST(SignalModel, validation) {
    EXPECT_THROW(SignalModel({0.5, 0.6}, {1.0}, {1, 2}), PreconditionError);
    EXPECT_THROW(SignalModel({0.5, 0.5}, {1.0}, {1, 2, 3}), DimensionError);
}

TEST(ProtocolSpec, block_variants_need_more_than_one_per_block) {
    EXPECT_THROW((ProtocolSpec{Variant::block_fixed_m, 4, 1}.validate()), PreconditionError);
    EXPECT_THROW((ProtocolSpec{Variant::block_fixed_n, 4, 1}.validate()), PreconditionError);
    EXPECT_NO_THROW((ProtocolSpec{Variant::iid, 4, 1}.validate()));
    EXPECT_THROW((ProtocolSpec{Variant::iid, 0, 5}.validate()), PreconditionError);
    EXPECT_EQ(parse_variant("blockm"), Variant::block_fixed_m);
    EXPECT_EQ(parse_variant("bogus"), std::nullopt);
}

TEST(Generate, constant_table) {
    for (auto v : {Variant::iid, Variant::block_fixed_m, Variant::block_fixed_n}) {
        const auto run = generate(constant_model(7.0), {v, 3, 4}, 1);
        EXPECT_EQ(run.outcomes, std::vector<double>(12, 7.0));
        EXPECT_EQ(run.block_boundaries, (std::vector<std::size_t>{0, 4, 8, 12}));
    }
}

TEST(Generate, fixed_m_with_point_mass_device_gives_constant_blocks) {
    const SignalModel model({0.25, 0.25, 0.25, 0.25}, {0.0, 1.0}, {0, 1, 0, 2, 0, 3, 0, 4});
    const auto run = generate(model, {Variant::block_fixed_m, 50, 5}, 9);
    bool varied = false;
    for (std::size_t b = 0; b < 50; ++b) {
        for (std::size_t t = 1; t < 5; ++t) EXPECT_EQ(run.outcomes[b * 5 + t], run.outcomes[b * 5]);
        varied |= run.outcomes[b * 5] != run.outcomes[0];
    }
    EXPECT_TRUE(varied);
}

TEST(Generate, fixed_n_with_point_mass_signal_gives_constant_blocks) {
    const SignalModel model({1.0, 0.0}, {0.5, 0.5}, {1, 2, 3, 4});
    const auto run = generate(model, {Variant::block_fixed_n, 50, 5}, 9);
    for (std::size_t b = 0; b < 50; ++b)
        for (std::size_t t = 1; t < 5; ++t) EXPECT_EQ(run.outcomes[b * 5 + t], run.outcomes[b * 5]);
}

TEST(Generate, deterministic_given_seed) {
    const auto model = SignalModel::loophole_default();
    const ProtocolSpec spec{Variant::block_fixed_m, 4, 250};
    const auto a = generate(model, spec, 31337);
    const auto b = generate(model, spec, 31337);
    EXPECT_EQ(a.outcomes, b.outcomes);
    EXPECT_NE(a.outcomes, generate(model, spec, 31338).outcomes);
}

TEST(GenerateRuns, independent_of_worker_count) {
    const auto model = SignalModel::loophole_default();
    const ProtocolSpec spec{Variant::iid, 4, 100};
    const auto one = generate_runs(model, spec, 5, 13, 1);
    const auto many = generate_runs(model, spec, 5, 13, 4);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].outcomes, many[i].outcomes);
        EXPECT_EQ(one[i].seed, rng::derive_seed(5, i));
    }
}

TEST(TestH0, iid_z_scores_stay_moderate) {
    // The skewed default model needs N around 10^4 before P(|z| > 4) drops
    // below 1e-4 (about 7.5e-5 by independent simulation). Over 10000 runs a
    // rate of 1e-4 yields more than 5 exceedances with probability < 0.001.
    const auto model = SignalModel::loophole_default();
    int outside = 0;
    for (const auto& r : generate_runs(model, {Variant::iid, 4, 2500}, 8, 10000)) {
        const auto report = test_h0(r, model);
        ASSERT_TRUE(report.z_score.has_value());
        if (std::abs(*report.z_score) > 4.0) ++outside;
    }
    EXPECT_LE(outside, 5);
}

TEST(TestH0, constant_sample_has_no_z_score) {
    const auto model = constant_model(3.0);
    const auto r = test_h0(generate(model, {Variant::iid, 1, 50}, 1), model);
    EXPECT_EQ(r.naive_sem, 0.0);
    EXPECT_FALSE(r.z_score.has_value());
    ASSERT_TRUE(r.ratio.has_value());
    EXPECT_DOUBLE_EQ(*r.ratio, 1.0);
    for (const auto& [alpha, rejected] : r.h0_rejected_at) EXPECT_FALSE(rejected);
}

TEST(TestH0, zero_theoretical_mean_reports_z_only) {
    const SignalModel model({0.5, 0.5}, {0.5, 0.5}, {1, -1, -1, 1});
    const auto r = test_h0(generate(model, {Variant::iid, 1, 100}, 2), model);
    EXPECT_FALSE(r.ratio.has_value());
    EXPECT_TRUE(r.z_score.has_value());
}

TEST(TestH0, empty_sample_rejected) {
    EXPECT_THROW(test_h0(std::span<const double>{}, product_model()), PreconditionError);
}

TEST(TestH0, hand_computed_report) {
    // mean 2, sd 1, N 4: sem 0.5, z = (2 - 0.25) / 0.5 = 3.5
    const std::vector<double> v{1, 2, 3, 2};
    const double sd = std::sqrt(2.0 / 3.0);
    const auto r = test_h0(v, product_model());
    EXPECT_DOUBLE_EQ(r.sample_mean, 2.0);
    EXPECT_DOUBLE_EQ(r.naive_sem, sd / 2.0);
    EXPECT_DOUBLE_EQ(*r.z_score, 1.75 / (sd / 2.0));
    EXPECT_DOUBLE_EQ(*r.ratio, 8.0);
    ASSERT_EQ(r.h0_rejected_at.size(), 3u);
    EXPECT_TRUE(r.h0_rejected_at[0].second);
}

TEST(TestH0, loophole_block_protocol_gives_huge_z) {
    // P(|z| > 50) is about 0.552 by independent simulation; the frozen seeds
    // give exactly half of the 100 runs.
    const auto model = SignalModel::loophole_default();
    int big = 0;
    for (const auto& r : generate_runs(model, {Variant::block_fixed_m, 4, 25000}, 2015, 100))
        if (std::abs(*test_h0(r, model).z_score) > 50.0) ++big;
    EXPECT_EQ(big, 50);
}

TEST(DesignEffect, iid_is_near_one) {
    const auto runs = generate_runs(SignalModel::loophole_default(), {Variant::iid, 4, 250}, 17, 100);
    const double deff = design_effect(runs);
    EXPECT_GE(deff, 0.7);
    EXPECT_LE(deff, 1.4);
}

TEST(DesignEffect, blocked_sampling_matches_icc_prediction) {
    const auto model = SignalModel::loophole_default();
    const auto runs = generate_runs(model, {Variant::block_fixed_m, 40, 250}, 18, 100);
    const double deff = design_effect(runs);
    const double predicted = oracle::predicted_design_effect(model, 250);  // about 62
    EXPECT_GT(deff, 10.0);
    EXPECT_GT(deff, 0.6 * predicted);
    EXPECT_LT(deff, 1.5 * predicted);
}

TEST(DesignEffect, point_mass_signal_carries_no_block_correlation) {
    const SignalModel model({1.0, 0.0}, {0.5, 0.5}, {0, 1, 5, 7});
    const double deff = design_effect(generate_runs(model, {Variant::block_fixed_m, 10, 50}, 19, 100));
    EXPECT_GE(deff, 0.7);
    EXPECT_LE(deff, 1.4);
}

TEST(DesignEffect, needs_thirty_samples) {
    const auto runs = generate_runs(product_model(), {Variant::iid, 2, 10}, 1, 29);
    EXPECT_THROW(design_effect(runs), PreconditionError);
}

TEST(DesignEffect, monotone_in_block_length) {
    const auto model = SignalModel::loophole_default();
    double previous = 0.0;
    for (std::size_t n2 : {10u, 100u, 1000u}) {
        const double deff = design_effect(generate_runs(model, {Variant::block_fixed_m, 20, n2}, 20 + n2, 200));
        EXPECT_GT(deff, previous) << "N2=" << n2;
        previous = deff;
    }
}

TEST(Generate, sample_mean_is_unbiased_for_every_variant) {
    const auto model = SignalModel::loophole_default();
    const double mu = theoretical_mean(model);
    const std::size_t n1 = 4, n2 = 50, runs = 1000;
    const double var_iid = std::pow(theoretical_sd(model), 2) / double(n1 * n2);
    const double var_m = oracle::fixed_m_mean_variance(model, n1, n2);
    const double var_n = oracle::fixed_m_mean_variance(oracle::transposed(model), n1, n2);
    const std::pair<Variant, double> cases[] = {
        {Variant::iid, var_iid}, {Variant::block_fixed_m, var_m}, {Variant::block_fixed_n, var_n}};
    for (const auto& [variant, var_run] : cases) {
        double grand = 0.0;
        for (const auto& r : generate_runs(model, {variant, n1, n2}, 40, runs)) grand += mean_and_sd(r.outcomes).first;
        grand /= double(runs);
        EXPECT_NEAR(grand, mu, 4.0 * std::sqrt(var_run / double(runs))) << to_string(variant);
    }
}

TEST(TestH0, iid_two_sided_rate_is_calibrated) {
    const auto model = SignalModel::loophole_default();
    int exceed = 0;
    for (const auto& r : generate_runs(model, {Variant::iid, 1, 2000}, 41, 1000))
        if (std::abs(*test_h0(r, model).z_score) > 1.96) ++exceed;
    EXPECT_GE(exceed, 30);
    EXPECT_LE(exceed, 70);
}

TEST(Generate, iid_and_block_marginals_agree) {
    const auto model = SignalModel::loophole_default();
    const auto iid = generate(model, {Variant::iid, 500000, 2}, 50);
    const auto block = generate(model, {Variant::block_fixed_m, 500000, 2}, 51);
    const stats::BinnedSample two{{iid.outcomes, block.outcomes}, stats::Binning::by_block};
    EXPECT_GT(stats::chi_square_homogeneity(two).p_value, 0.001);
}
