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

#ifndef ENTCERT_PROTOCOL_SIM_HPP
#define ENTCERT_PROTOCOL_SIM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace entcert::protocol {

/// Signal distribution p1(m), device distribution p2(n), outcome table A(m, n).
class SignalModel {
   public:
    /// `outcome` is row-major: outcome[m * p2.size() + n].
    SignalModel(std::vector<double> p1, std::vector<double> p2, std::vector<double> outcome);

    /// m in {0..9} with p1 proportional to 2^-m, n in {0, 1} uniform, A(m, n) = (m + 1) n.
    static SignalModel loophole_default();

    const std::vector<double>& p1() const noexcept { return p1_; }
    const std::vector<double>& p2() const noexcept { return p2_; }
    const std::vector<double>& outcome_table() const noexcept { return outcome_; }
    double outcome(std::size_t m, std::size_t n) const noexcept { return outcome_[m * p2_.size() + n]; }

   private:
    std::vector<double> p1_;
    std::vector<double> p2_;
    std::vector<double> outcome_;
};

/// sum_{m,n} A(m,n) p1(m) p2(n)
double theoretical_mean(const SignalModel& model);
/// sqrt(E[A^2] - E[A]^2) under the product distribution.
double theoretical_sd(const SignalModel& model);

enum class Variant {
    iid,            ///< fresh (m, n) for every outcome
    block_fixed_m,  ///< one m per block, N2 fresh n values
    block_fixed_n,  ///< one n per block, N2 fresh m values
};

std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view text) noexcept;

struct ProtocolSpec {
    Variant variant;
    std::size_t n1;  ///< number of blocks
    std::size_t n2;  ///< block length

    /// Throws PreconditionError on invalid parameters (block variants need n2 > 1).
    void validate() const;
    std::size_t total() const noexcept { return n1 * n2; }
};

struct RunSample {
    std::vector<double> outcomes;
    std::vector<std::size_t> block_boundaries;  ///< start index of each block, plus outcomes.size()
    ProtocolSpec protocol;
    std::uint64_t seed;
};

/// Deterministic in (model, protocol, seed). Block b draws from Philox
/// stream b: position 0 holds the per-block variable, position 1 + t the
/// t-th outcome. For IID every outcome uses its own position.
RunSample generate(const SignalModel& model, const ProtocolSpec& protocol, std::uint64_t seed);

inline constexpr double kAlphas[] = {0.05, 0.01, 0.001};

struct SignificanceReport {
    double sample_mean;
    double theoretical_mean;
    std::optional<double> ratio;    ///< absent when the theoretical mean is 0
    double naive_sem;               ///< sample sd / sqrt(N), treating the sample as simple random
    std::optional<double> z_score;  ///< absent when naive_sem is 0
    /// One-sided rejection of H0: mean_s / mean <= 1 at each alpha in kAlphas.
    std::vector<std::pair<double, bool>> h0_rejected_at;
};

SignificanceReport test_h0(std::span<const double> outcomes, const SignalModel& model);
SignificanceReport test_h0(const RunSample& sample, const SignalModel& model);

/// Mean and sample standard deviation (n - 1 denominator).
std::pair<double, double> mean_and_sd(std::span<const double> values);

/// Variance of per-run means divided by the mean squared naive SEM.
/// Requires at least 30 samples; throws DegenerateSampleError if every run
/// has zero variance.
double design_effect(std::span<const RunSample> samples);

/// Seeded batch of runs; run i uses rng::derive_seed(master_seed, i).
std::vector<RunSample> generate_runs(const SignalModel& model, const ProtocolSpec& protocol, std::uint64_t master_seed,
                                     std::size_t runs, unsigned workers = 1);

}  // namespace entcert::protocol

#endif  // ENTCERT_PROTOCOL_SIM_HPP
