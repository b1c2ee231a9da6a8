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

#ifndef ENTCERT_CLASSICAL_MODELS_HPP
#define ENTCERT_CLASSICAL_MODELS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "entcert/rng.hpp"
#include "entcert/states.hpp"

namespace entcert::classical {

using Rational = boost::rational<std::int64_t>;

/// A die showing 1 with probability `success_probability`, 0 otherwise.
struct DiceType {
    Rational success_probability;

    /// 1 on three faces out of six.
    static DiceType d1() { return {Rational(1, 2)}; }
    /// 1 on four faces out of six.
    static DiceType d2() { return {Rational(2, 3)}; }
};

struct DicePair {
    Rational weight;
    DiceType left;
    DiceType right;
};

/// Source that ships a pair of dice chosen by weight; Alice rolls `left`,
/// Bob rolls `right`.
class DicePairEnsemble {
   public:
    explicit DicePairEnsemble(std::vector<DicePair> pairs);

    /// (D1, D1) with weight 1/4 and (D2, D2) with weight 3/4.
    static DicePairEnsemble reference();

    const std::vector<DicePair>& pairs() const noexcept { return pairs_; }

   private:
    std::vector<DicePair> pairs_;
};

struct DiceMoments {
    Rational e_a;
    Rational e_b;
    Rational e_ab;
    Rational cov;
};

DiceMoments analytic_moments(const DicePairEnsemble& e);

struct OutcomePair {
    std::uint8_t a;
    std::uint8_t b;
    bool operator==(const OutcomePair&) const = default;
};

/// Trials [first, first + out.size()). Trial i uses exactly one Philox block
/// (counter = i, key = seed): word 0 picks the pair, words 1-2 roll the dice.
void sample_range(const DicePairEnsemble& e, std::uint64_t first, std::uint64_t seed, std::span<OutcomePair> out);

/// n trials, split over `workers` threads; output does not depend on `workers`.
std::vector<OutcomePair> sample(const DicePairEnsemble& e, std::size_t n, std::uint64_t seed, unsigned workers = 1);

struct SampleMoments {
    std::size_t n;
    double mean_a, mean_b, mean_ab, cov;
    /// Standard errors; for cov, sd of (a - mean_a)(b - mean_b) over sqrt(n).
    double sem_a, sem_b, sem_ab, sem_cov;
};

SampleMoments empirical_moments(std::span<const OutcomePair> outcomes);

/// Finite local stochastic hidden-variable model with {0,1} outcomes:
/// P(A = 1 | lambda) = response_a[lambda], P(B = 1 | lambda) = response_b[lambda].
class FiniteLHVModel {
   public:
    FiniteLHVModel(std::vector<double> lambda_weights, std::vector<double> response_a, std::vector<double> response_b);

    const std::vector<double>& lambda_weights() const noexcept { return weights_; }
    const std::vector<double>& response_a() const noexcept { return response_a_; }
    const std::vector<double>& response_b() const noexcept { return response_b_; }

   private:
    std::vector<double> weights_;
    std::vector<double> response_a_;
    std::vector<double> response_b_;
};

struct LhvMoments {
    double e_a, e_b, e_ab, cov;
};

LhvMoments analytic_moments(const FiniteLHVModel& m);

FiniteLHVModel to_lhv_model(const DicePairEnsemble& e);

/// Each lambda becomes the term lambda_weight * diag(1-p_a, p_a) (x) diag(1-p_b, p_b).
/// Zero-weight lambdas are dropped.
states::ConvexSumState lhv_to_convex_sum(const FiniteLHVModel& m);

/// diag(0, 1): the outcome-1 indicator under the encoding 0 -> |0>, 1 -> |1>.
hilbert::HermitianOperator outcome_indicator();

/// LHV model with two settings per side; outcomes mapped 1 -> +1, 0 -> -1.
struct LhvSettingsModel {
    std::vector<double> lambda_weights;
    std::array<std::vector<double>, 2> response_a;  ///< settings A, A'
    std::array<std::vector<double>, 2> response_b;  ///< settings B, B'
};

/// sum_lambda w (2 p_a - 1)(2 p_b - 1)
double lhv_correlation(const LhvSettingsModel& m, int setting_a, int setting_b);
/// CHSH expression of the four LHV correlations.
double lhv_chsh(const LhvSettingsModel& m);

LhvSettingsModel random_lhv_settings_model(rng::Stream& stream, std::size_t lambdas);

}  // namespace entcert::classical

#endif  // ENTCERT_CLASSICAL_MODELS_HPP
