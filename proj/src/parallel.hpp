#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nonlocal {

/// Resolves a requested worker count; 0 means hardware concurrency.
inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Calls body(block_index, begin, end) for fixed-size blocks of [0, count).
/// Block boundaries do not depend on the worker count, so per-block partial
/// results combined in block order are identical for any `threads`.
template <class Body>
void for_each_block(std::size_t count, std::size_t block_size, int threads, Body&& body) {
  if (count == 0) return;
  const std::size_t blocks = (count + block_size - 1) / block_size;
  const int workers = static_cast<int>(std::min<std::size_t>(blocks, resolve_threads(threads)));
  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    body(b, begin, std::min(count, begin + block_size));
  };
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) {
        try {
          run_block(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = blocks;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace nonlocal
