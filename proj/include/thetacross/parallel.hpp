// Copyright 2026 the thetacross authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Deterministic work distribution: callers split a job into indexed chunks,
// workers pull chunk indices from an atomic counter, and per-chunk results
// land in caller-owned slots keyed by index. Combining those slots in index
// order afterwards makes every result independent of worker count and
// scheduling, which the file formats downstream rely on.

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace thetacross {

inline unsigned default_workers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

template <class Fn>
void parallel_for_chunks(std::size_t n_chunks, unsigned workers, Fn&& fn) {
  if (n_chunks == 0) return;
  if (workers <= 1 || n_chunks == 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
    return;
  }
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;

  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_chunks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next.store(n_chunks, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace thetacross
