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

#include <cmath>
#include <string>

#include "entcert/error.hpp"
#include "entcert/parallel.hpp"
#include "entcert/rng.hpp"
#include "entcert/special_functions.hpp"

namespace entcert::protocol {

namespace {

void check_distribution(const std::vector<double>& p, const char* name) {
    if (p.empty()) throw PreconditionError(std::string("SignalModel: ") + name + " is empty");
    double total = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw PreconditionError(std::string("SignalModel: ") + name + " has a negative entry");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw PreconditionError(std::string("SignalModel: ") + name + " sums to " + std::to_string(total));
    }
}

}  // namespace

SignalModel::SignalModel(std::vector<double> p1, std::vector<double> p2, std::vector<double> outcome)
    : p1_(std::move(p1)), p2_(std::move(p2)), outcome_(std::move(outcome)) {
    check_distribution(p1_, "p1");
    check_distribution(p2_, "p2");
    if (outcome_.size() != p1_.size() * p2_.size()) {
        throw DimensionError("SignalModel: outcome table has " + std::to_string(outcome_.size()) + " entries, expected " +
                             std::to_string(p1_.size() * p2_.size()));
    }
    for (double a : outcome_) {
        if (!std::isfinite(a)) throw PreconditionError("SignalModel: non-finite outcome");
    }
}

SignalModel SignalModel::loophole_default() {
    std::vector<double> p1(10);
    double total = 0.0;
    for (std::size_t m = 0; m < p1.size(); ++m) total += p1[m] = std::ldexp(1.0, -int(m));
    for (auto& p : p1) p /= total;
    std::vector<double> outcome(20);
    for (std::size_t m = 0; m < 10; ++m) {
        outcome[m * 2 + 0] = 0.0;
        outcome[m * 2 + 1] = double(m + 1);
    }
    return SignalModel(std::move(p1), {0.5, 0.5}, std::move(outcome));
}

double theoretical_mean(const SignalModel& model) {
    double sum = 0.0;
    for (std::size_t m = 0; m < model.p1().size(); ++m)
        for (std::size_t n = 0; n < model.p2().size(); ++n) sum += model.outcome(m, n) * model.p1()[m] * model.p2()[n];
    return sum;
}

double theoretical_sd(const SignalModel& model) {
    const double mean = theoretical_mean(model);
    double second = 0.0;
    for (std::size_t m = 0; m < model.p1().size(); ++m)
        for (std::size_t n = 0; n < model.p2().size(); ++n) {
            const double d = model.outcome(m, n) - mean;
            second += d * d * model.p1()[m] * model.p2()[n];
        }
    return std::sqrt(second);
}

std::string_view to_string(Variant v) noexcept {
    switch (v) {
        case Variant::iid: return "iid";
        case Variant::block_fixed_m: return "blockm";
        case Variant::block_fixed_n: return "blockn";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view text) noexcept {
    if (text == "iid") return Variant::iid;
    if (text == "blockm") return Variant::block_fixed_m;
    if (text == "blockn") return Variant::block_fixed_n;
    return std::nullopt;
}

void ProtocolSpec::validate() const {
    if (n1 == 0 || n2 == 0) throw PreconditionError("ProtocolSpec: N1 and N2 must be positive");
    if (variant != Variant::iid && n2 <= 1) {
        throw PreconditionError("ProtocolSpec: block protocols need N2 > 1, got " + std::to_string(n2));
    }
}

RunSample generate(const SignalModel& model, const ProtocolSpec& protocol, std::uint64_t seed) {
    protocol.validate();
    const auto cum1 = rng::make_cumulative(model.p1());
    const auto cum2 = rng::make_cumulative(model.p2());
    const auto key = rng::key_from_seed(seed);

    RunSample out{std::vector<double>(protocol.total()), {}, protocol, seed};
    out.block_boundaries.reserve(protocol.n1 + 1);
    for (std::size_t b = 0; b < protocol.n1; ++b) {
        out.block_boundaries.push_back(b * protocol.n2);
        // Each Philox block yields two 53-bit uniforms: u[0] from words 0-1, u[1] from words 2-3.
        auto uniforms = [&](std::uint64_t position) {
            const auto w = rng::Philox4x32::block({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                                                   static_cast<std::uint32_t>(position),
                                                   static_cast<std::uint32_t>(position >> 32)},
                                                  key);
            return std::pair{rng::unit_from_u64((std::uint64_t(w[1]) << 32) | w[0]),
                             rng::unit_from_u64((std::uint64_t(w[3]) << 32) | w[2])};
        };
        double* block = out.outcomes.data() + b * protocol.n2;
        switch (protocol.variant) {
            case Variant::iid:
                for (std::size_t t = 0; t < protocol.n2; ++t) {
                    const auto [um, un] = uniforms(1 + t);
                    block[t] = model.outcome(rng::sample_index(cum1, um), rng::sample_index(cum2, un));
                }
                break;
            case Variant::block_fixed_m: {
                const std::size_t m = rng::sample_index(cum1, uniforms(0).first);
                for (std::size_t t = 0; t < protocol.n2; ++t)
                    block[t] = model.outcome(m, rng::sample_index(cum2, uniforms(1 + t).first));
                break;
            }
            case Variant::block_fixed_n: {
                const std::size_t n = rng::sample_index(cum2, uniforms(0).first);
                for (std::size_t t = 0; t < protocol.n2; ++t)
                    block[t] = model.outcome(rng::sample_index(cum1, uniforms(1 + t).first), n);
                break;
            }
        }
    }
    out.block_boundaries.push_back(protocol.total());
    return out;
}

std::pair<double, double> mean_and_sd(std::span<const double> values) {
    if (values.empty()) throw PreconditionError("mean_and_sd: empty input");
    // Two-pass for accuracy.
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / double(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(ss / double(values.size() - 1)) : 0.0;
    return {mean, sd};
}

SignificanceReport test_h0(std::span<const double> outcomes, const SignalModel& model) {
    if (outcomes.empty()) throw PreconditionError("test_h0: empty sample");
    const auto [mean, sd] = mean_and_sd(outcomes);
    SignificanceReport r{};
    r.sample_mean = mean;
    r.theoretical_mean = theoretical_mean(model);
    if (r.theoretical_mean != 0.0) r.ratio = mean / r.theoretical_mean;
    r.naive_sem = sd / std::sqrt(double(outcomes.size()));
    if (r.naive_sem > 0.0) r.z_score = (mean - r.theoretical_mean) / r.naive_sem;
    for (double alpha : kAlphas) {
        const bool reject = r.z_score && special::normal_upper_tail(*r.z_score) < alpha;
        r.h0_rejected_at.emplace_back(alpha, reject);
    }
    return r;
}

SignificanceReport test_h0(const RunSample& sample, const SignalModel& model) {
    return test_h0(std::span<const double>(sample.outcomes), model);
}

double design_effect(std::span<const RunSample> samples) {
    if (samples.size() < 30) {
        throw PreconditionError("design_effect: need at least 30 samples, got " + std::to_string(samples.size()));
    }
    std::vector<double> means;
    means.reserve(samples.size());
    double mean_sem2 = 0.0;
    for (const auto& s : samples) {
        const auto [mean, sd] = mean_and_sd(s.outcomes);
        means.push_back(mean);
        mean_sem2 += sd * sd / double(s.outcomes.size());
    }
    mean_sem2 /= double(samples.size());
    if (mean_sem2 == 0.0) throw DegenerateSampleError("design_effect: every run has zero variance");
    const double between_sd = mean_and_sd(means).second;
    return between_sd * between_sd / mean_sem2;
}

std::vector<RunSample> generate_runs(const SignalModel& model, const ProtocolSpec& protocol, std::uint64_t master_seed,
                                     std::size_t runs, unsigned workers) {
    protocol.validate();
    std::vector<RunSample> out(runs);
    parallel_for(runs, workers, [&](std::size_t i) { out[i] = generate(model, protocol, rng::derive_seed(master_seed, i)); });
    return out;
}

}  // namespace entcert::protocol
