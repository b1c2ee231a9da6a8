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

#ifndef ENTCERT_STAT_TESTS_HPP
#define ENTCERT_STAT_TESTS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entcert/protocol_sim.hpp"

namespace entcert::stats {

enum class Binning { contiguous_equal, by_block };

/// Partition of a sample into >= 2 bins; every outcome lands in exactly one.
struct BinnedSample {
    std::vector<std::vector<double>> bins;
    Binning binning;
};

/// Bin i holds indices [N i / k, N (i + 1) / k).
BinnedSample bin_contiguous(std::span<const double> outcomes, std::size_t bin_count);
/// One bin per protocol block.
BinnedSample bin_by_block(const protocol::RunSample& sample);

struct TestResult {
    std::string name;
    double statistic;
    std::optional<double> degrees_of_freedom;
    double p_value;
    std::string note;  ///< e.g. merged categories or degenerate input
};

struct HomogeneityReport {
    std::vector<TestResult> tests;
    double alpha;
    /// min(1, k * min p) over the k tests.
    double bonferroni_p;
    bool overall_homogeneous;
};

/// Contingency chi-square over bins x outcome categories. Categories with
/// expected counts below 5 are merged, rarest first. Inputs with more than
/// `max_categories` distinct values are first coarsened to pooled deciles.
TestResult chi_square_homogeneity(const BinnedSample& b, std::size_t max_categories = 64);

struct KsResult {
    double d;
    double p_value;
};

/// Two-sample Kolmogorov-Smirnov with the asymptotic Kolmogorov p-value
/// (Stephens' small-sample correction to the argument).
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

struct BlockMeanScan {
    std::vector<double> bin_means;
    double statistic;  ///< between-bin over within-bin mean square
    double df_between;
    double df_within;
    double p_value;
};

/// One-way analysis of variance across bins. Throws DegenerateSampleError
/// when the within-bin variance is zero in every bin.
BlockMeanScan block_mean_scan(const BinnedSample& b);

/// Lag-1 autocorrelation r1 with z = r1 sqrt(N) and a two-sided normal p-value.
TestResult lag1_autocorrelation(std::span<const double> outcomes);

/// Chi-square, first-half vs second-half KS, block-mean scan over
/// `bin_count` contiguous bins and lag-1 autocorrelation, combined with a
/// Bonferroni correction at `alpha`. Requires N >= 10 * bin_count.
HomogeneityReport simple_random_sample_audit(std::span<const double> outcomes, std::size_t bin_count,
                                             double alpha = 0.05);
HomogeneityReport simple_random_sample_audit(const protocol::RunSample& sample, std::size_t bin_count,
                                             double alpha = 0.05);

}  // namespace entcert::stats

#endif  // ENTCERT_STAT_TESTS_HPP
