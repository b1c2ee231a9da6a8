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

#include "entcert/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace entcert::rng;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox4x32, known_answer_zero) {
    const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox4x32, known_answer_all_ones) {
    const auto out = Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
    EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox4x32, known_answer_pi_digits) {
    const auto out = Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
    EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Stream, sequential_matches_random_access) {
    Stream s(42, 7);
    const auto b0 = s.block_at(0);
    const auto b1 = s.block_at(1);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(s.next_u32(), b0[i]);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(s.next_u32(), b1[i]);
}

TEST(Stream, uniform_in_unit_interval_with_right_mean) {
    Stream s(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // sd of the mean is sqrt(1/12/n) ~ 6.5e-4
    EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Stream, normal_moments) {
    Stream s(3, 0);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        sum += z;
        sum2 += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(sum2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(DeriveSeed, distinct_and_stable) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(99, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(derive_seed(99, 5), derive_seed(99, 5));
    EXPECT_NE(derive_seed(99, 5), derive_seed(100, 5));
}

TEST(SampleIndex, skips_zero_probability_entries) {
    const std::vector<double> p{0.5, 0.0, 0.5, 0.0};
    const auto cum = make_cumulative(p);
    EXPECT_EQ(cum.back(), 1.0);
    EXPECT_EQ(sample_index(cum, 0.0), 0u);
    EXPECT_EQ(sample_index(cum, 0.4999), 0u);
    EXPECT_EQ(sample_index(cum, 0.5), 2u);
    EXPECT_EQ(sample_index(cum, 0.9999999), 2u);
}
