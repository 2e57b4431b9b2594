// Copyright 2026 The quht-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace quht {

/// Worker count: QUHT_THREADS if set to a positive integer, else the
/// machine's hardware concurrency (at least 1).
inline unsigned resolve_thread_count() {
  if (const char* env = std::getenv("QUHT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs body(trial, acc) for every trial in [0, trials), splitting the range
/// into contiguous blocks across `threads` workers, each with its own
/// accumulator. Blocks are merged in block order. Results are independent of
/// the thread count whenever merge is associative and commutative on the
/// accumulated values (integer counts, for instance).
template <typename Acc, typename Body, typename Merge>
Acc parallel_trials(std::uint64_t trials, unsigned threads, const Acc& zero, Body&& body, Merge&& merge) {
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, trials));
  std::vector<Acc> partial(workers, zero);
  auto run_block = [&](std::uint64_t w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    for (std::uint64_t t = begin; t < end; ++t) body(t, partial[w]);
  };
  if (workers == 1) {
    run_block(0);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_block(w);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  Acc total = zero;
  for (const Acc& p : partial) merge(total, p);
  return total;
}

/// Counts trials for which pred(trial) is true.
template <typename Pred>
std::uint64_t count_trials(std::uint64_t trials, unsigned threads, Pred&& pred) {
  return parallel_trials(
      trials, threads, std::uint64_t{0}, [&](std::uint64_t t, std::uint64_t& acc) { acc += pred(t) ? 1 : 0; },
      [](std::uint64_t& into, std::uint64_t from) { into += from; });
}

}  // namespace quht
