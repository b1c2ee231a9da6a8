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

#ifndef ENTCERT_PARALLEL_HPP
#define ENTCERT_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace entcert {

/// Calls fn(begin, end) on contiguous chunks of [0, count) using up to
/// `workers` threads. Chunk boundaries do not affect results as long as
/// fn writes only to slots it owns. The first exception is rethrown.
template <typename Fn>
void parallel_chunks(std::size_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(workers, count);
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = count * c / chunks;
        const std::size_t end = count * (c + 1) / chunks;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

/// Per-index variant of parallel_chunks.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    parallel_chunks(count, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace entcert

#endif  // ENTCERT_PARALLEL_HPP
