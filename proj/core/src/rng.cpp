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

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entcert::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kMul0, ctr[0], lo0, hi0);
        mulhilo(kMul1, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    // Stream id 2^64-1 is reserved for seed derivation.
    const auto out = Philox4x32::block(
        {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0xFFFFFFFFu, 0xFFFFFFFFu},
        key_from_seed(master));
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_(key_from_seed(seed)), stream_id_(stream_id) {}

Philox4x32::Counter Stream::block_at(std::uint64_t position) const noexcept {
    return Philox4x32::block({static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32),
                              static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32)},
                             key_);
}

std::uint32_t Stream::next_u32() noexcept {
    if (used_ == 4) {
        buffer_ = block_at(position_++);
        used_ = 0;
    }
    return buffer_[used_++];
}

std::uint64_t Stream::next_u64() noexcept {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double Stream::uniform() noexcept { return unit_from_u64(next_u64()); }

double Stream::normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> make_cumulative(std::span<const double> probabilities) {
    std::vector<double> cumulative(probabilities.size());
    double running = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        running += probabilities[i];
        cumulative[i] = running;
        if (probabilities[i] > 0.0) last_positive = i;
    }
    for (std::size_t i = last_positive; i < cumulative.size(); ++i) cumulative[i] = 1.0;
    return cumulative;
}

std::size_t sample_index(std::span<const double> cumulative, double u) noexcept {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return cumulative.size() - 1;
    return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace entcert::rng
