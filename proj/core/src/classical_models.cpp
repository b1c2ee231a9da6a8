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

#include "entcert/classical_models.hpp"

#include <cmath>
#include <string>

#include "entcert/error.hpp"
#include "entcert/inequalities.hpp"
#include "entcert/parallel.hpp"

namespace entcert::classical {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError(std::string(what) + ": probability outside [0, 1]");
}

double sum_checked(const std::vector<double>& w, const char* what) {
    double total = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw PreconditionError(std::string(what) + ": negative weight");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw PreconditionError(std::string(what) + ": weights do not sum to 1");
    return total;
}

}  // namespace

DicePairEnsemble::DicePairEnsemble(std::vector<DicePair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw PreconditionError("DicePairEnsemble: no pairs");
    Rational total = 0;
    for (const auto& p : pairs_) {
        if (p.weight < 0) throw PreconditionError("DicePairEnsemble: negative weight");
        for (const auto& die : {p.left, p.right}) {
            if (die.success_probability < 0 || die.success_probability > 1) {
                throw PreconditionError("DicePairEnsemble: die probability outside [0, 1]");
            }
        }
        total += p.weight;
    }
    if (total != Rational(1)) throw PreconditionError("DicePairEnsemble: weights do not sum exactly to 1");
}

DicePairEnsemble DicePairEnsemble::reference() {
    return DicePairEnsemble({{Rational(1, 4), DiceType::d1(), DiceType::d1()},
                             {Rational(3, 4), DiceType::d2(), DiceType::d2()}});
}

DiceMoments analytic_moments(const DicePairEnsemble& e) {
    DiceMoments m{0, 0, 0, 0};
    for (const auto& p : e.pairs()) {
        m.e_a += p.weight * p.left.success_probability;
        m.e_b += p.weight * p.right.success_probability;
        m.e_ab += p.weight * p.left.success_probability * p.right.success_probability;
    }
    m.cov = m.e_ab - m.e_a * m.e_b;
    return m;
}

void sample_range(const DicePairEnsemble& e, std::uint64_t first, std::uint64_t seed, std::span<OutcomePair> out) {
    std::vector<double> weights, p_left, p_right;
    for (const auto& p : e.pairs()) {
        weights.push_back(to_double(p.weight));
        p_left.push_back(to_double(p.left.success_probability));
        p_right.push_back(to_double(p.right.success_probability));
    }
    const auto cumulative = rng::make_cumulative(weights);
    const auto key = rng::key_from_seed(seed);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::uint64_t trial = first + k;
        const auto words =
            rng::Philox4x32::block({static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), 0, 0}, key);
        const std::size_t type = rng::sample_index(cumulative, rng::unit_from_u32(words[0]));
        out[k].a = rng::unit_from_u32(words[1]) < p_left[type] ? 1 : 0;
        out[k].b = rng::unit_from_u32(words[2]) < p_right[type] ? 1 : 0;
    }
}

std::vector<OutcomePair> sample(const DicePairEnsemble& e, std::size_t n, std::uint64_t seed, unsigned workers) {
    if (n == 0) throw PreconditionError("sample: at least one trial required");
    std::vector<OutcomePair> out(n);
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end) {
        sample_range(e, begin, seed, std::span<OutcomePair>(out).subspan(begin, end - begin));
    });
    return out;
}

SampleMoments empirical_moments(std::span<const OutcomePair> outcomes) {
    if (outcomes.empty()) throw PreconditionError("empirical_moments: empty sample");
    const double n = double(outcomes.size());
    std::size_t count_a = 0, count_b = 0, count_ab = 0;
    for (const auto& o : outcomes) {
        count_a += o.a;
        count_b += o.b;
        count_ab += o.a & o.b;
    }
    SampleMoments m{};
    m.n = outcomes.size();
    m.mean_a = double(count_a) / n;
    m.mean_b = double(count_b) / n;
    m.mean_ab = double(count_ab) / n;
    m.cov = m.mean_ab - m.mean_a * m.mean_b;
    // Bernoulli indicators: sample variance = p (1 - p) n / (n - 1).
    const double bessel = n > 1 ? n / (n - 1) : 0.0;
    m.sem_a = std::sqrt(m.mean_a * (1 - m.mean_a) * bessel / n);
    m.sem_b = std::sqrt(m.mean_b * (1 - m.mean_b) * bessel / n);
    m.sem_ab = std::sqrt(m.mean_ab * (1 - m.mean_ab) * bessel / n);
    // (a - mean_a)(b - mean_b) takes four values; accumulate by cell counts.
    double sum2 = 0.0;
    const double cells[2][2] = {{n - count_a - count_b + count_ab, count_b - double(count_ab)},
                                {count_a - double(count_ab), double(count_ab)}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double d = (a - m.mean_a) * (b - m.mean_b) - m.cov;
            sum2 += cells[a][b] * d * d;
        }
    m.sem_cov = n > 1 ? std::sqrt(sum2 / (n - 1) / n) : 0.0;
    return m;
}

FiniteLHVModel::FiniteLHVModel(std::vector<double> lambda_weights, std::vector<double> response_a,
                               std::vector<double> response_b)
    : weights_(std::move(lambda_weights)), response_a_(std::move(response_a)), response_b_(std::move(response_b)) {
    if (weights_.empty()) throw PreconditionError("FiniteLHVModel: no hidden-variable values");
    if (response_a_.size() != weights_.size() || response_b_.size() != weights_.size()) {
        throw DimensionError("FiniteLHVModel: response tables must match the number of lambda values");
    }
    sum_checked(weights_, "FiniteLHVModel");
    for (double p : response_a_) check_probability(p, "FiniteLHVModel");
    for (double p : response_b_) check_probability(p, "FiniteLHVModel");
}

LhvMoments analytic_moments(const FiniteLHVModel& m) {
    LhvMoments out{0, 0, 0, 0};
    for (std::size_t i = 0; i < m.lambda_weights().size(); ++i) {
        const double w = m.lambda_weights()[i];
        out.e_a += w * m.response_a()[i];
        out.e_b += w * m.response_b()[i];
        out.e_ab += w * m.response_a()[i] * m.response_b()[i];
    }
    out.cov = out.e_ab - out.e_a * out.e_b;
    return out;
}

FiniteLHVModel to_lhv_model(const DicePairEnsemble& e) {
    std::vector<double> w, pa, pb;
    for (const auto& p : e.pairs()) {
        w.push_back(to_double(p.weight));
        pa.push_back(to_double(p.left.success_probability));
        pb.push_back(to_double(p.right.success_probability));
    }
    return FiniteLHVModel(std::move(w), std::move(pa), std::move(pb));
}

states::ConvexSumState lhv_to_convex_sum(const FiniteLHVModel& m) {
    using hilbert::ComplexMatrix;
    using hilbert::DensityOperator;
    using hilbert::TensorStructure;
    std::vector<states::ConvexTerm> terms;
    for (std::size_t i = 0; i < m.lambda_weights().size(); ++i) {
        const double w = m.lambda_weights()[i];
        if (w == 0.0) continue;
        const double pa = m.response_a()[i];
        const double pb = m.response_b()[i];
        terms.push_back({w, DensityOperator(ComplexMatrix::diagonal({1.0 - pa, pa}), TensorStructure({2})),
                         DensityOperator(ComplexMatrix::diagonal({1.0 - pb, pb}), TensorStructure({2}))});
    }
    return states::ConvexSumState(std::move(terms));
}

hilbert::HermitianOperator outcome_indicator() {
    return hilbert::HermitianOperator(hilbert::ComplexMatrix::diagonal({0.0, 1.0}));
}

double lhv_correlation(const LhvSettingsModel& m, int setting_a, int setting_b) {
    const auto& ra = m.response_a.at(setting_a);
    const auto& rb = m.response_b.at(setting_b);
    if (ra.size() != m.lambda_weights.size() || rb.size() != m.lambda_weights.size()) {
        throw DimensionError("lhv_correlation: response tables must match the number of lambda values");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < m.lambda_weights.size(); ++i)
        sum += m.lambda_weights[i] * (2.0 * ra[i] - 1.0) * (2.0 * rb[i] - 1.0);
    return sum;
}

double lhv_chsh(const LhvSettingsModel& m) {
    return inequalities::chsh_expression(lhv_correlation(m, 0, 0), lhv_correlation(m, 0, 1),
                                         lhv_correlation(m, 1, 0), lhv_correlation(m, 1, 1));
}

LhvSettingsModel random_lhv_settings_model(rng::Stream& stream, std::size_t lambdas) {
    LhvSettingsModel m;
    m.lambda_weights = states::random_weights(stream, lambdas);
    for (auto* table : {&m.response_a[0], &m.response_a[1], &m.response_b[0], &m.response_b[1]}) {
        table->resize(lambdas);
        // Mix deterministic (0/1) and stochastic responses.
        for (auto& p : *table) p = (stream.next_u32() & 1) ? double(stream.next_u32() & 1) : stream.uniform();
    }
    return m;
}

}  // namespace entcert::classical
