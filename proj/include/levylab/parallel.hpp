/*
   Copyright 2026 The levylab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "levylab/rng.hpp"

namespace levylab {

/// Draws per chunk. Fixed so that results never depend on the thread count.
inline constexpr std::size_t kChunkSize = 1024;

/// Worker count: LEVYLAB_THREADS if set and positive, else hardware concurrency.
inline std::size_t thread_count() {
  if (const char* env = std::getenv("LEVYLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(chunk) for chunk in [0, n_chunks) on up to thread_count() threads.
template <class Fn>
void parallel_chunks(std::size_t n_chunks, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), n_chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < n_chunks; c = next++) {
        try {
          fn(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Produces n draws of fn(stream) in draw order. Draw i belongs to chunk
/// i / kChunkSize and uses RandomStream(seed, chunk), consumed sequentially.
template <class Fn>
auto collect_draws(std::size_t n, std::uint64_t seed, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, RandomStream&>> {
  using R = std::invoke_result_t<Fn&, RandomStream&>;
  std::vector<R> out(n);
  const std::size_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
  parallel_chunks(n_chunks, [&](std::size_t chunk) {
    RandomStream rng(seed, chunk);
    const std::size_t end = std::min(n, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) out[i] = fn(rng);
  });
  return out;
}

/// Derives a sub-seed for a named check so that checks inside a suite use
/// disjoint streams.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag);

}  // namespace levylab
