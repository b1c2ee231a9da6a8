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

#ifndef ENTCERT_RNG_HPP
#define ENTCERT_RNG_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace entcert::rng {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The output is a pure function of (counter, key); there is no hidden
/// state, so any trial can be regenerated from its index alone.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Splits a 64-bit seed into a Philox key.
constexpr Philox4x32::Key key_from_seed(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Seed of run `index` under `master`; stable across worker counts.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Maps 32 random bits to [0, 1).
constexpr double unit_from_u32(std::uint32_t x) noexcept { return static_cast<double>(x) * 0x1.0p-32; }

/// Maps 64 random bits to [0, 1) with 53 bits of resolution.
constexpr double unit_from_u64(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Sequential view onto one Philox stream: counter words 0-1 hold the
/// stream id, words 2-3 the block position. Each block yields four words.
class Stream {
   public:
    Stream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() noexcept;
    /// Standard normal via Box-Muller (consumes two uniforms).
    double normal() noexcept;

    /// Random words of block `position` of this stream, independent of
    /// how far the sequential cursor has advanced.
    Philox4x32::Counter block_at(std::uint64_t position) const noexcept;

   private:
    Philox4x32::Key key_;
    std::uint64_t stream_id_;
    std::uint64_t position_ = 0;
    Philox4x32::Counter buffer_{};
    int used_ = 4;
};

/// Running sums of `probabilities`; every entry from the last positive
/// probability onward is pinned to exactly 1.
std::vector<double> make_cumulative(std::span<const double> probabilities);

/// Index of the first cumulative weight strictly above `u` (inverse CDF).
/// `cumulative` must be non-decreasing with the last entry treated as 1.
std::size_t sample_index(std::span<const double> cumulative, double u) noexcept;

}  // namespace entcert::rng

#endif  // ENTCERT_RNG_HPP
