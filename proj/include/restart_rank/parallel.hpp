#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace restart_rank {

// Hardware concurrency, capped by RESTART_RANK_THREADS when set to a
// positive integer.
inline unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RESTART_RANK_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return n;
}

// Calls fn(k) for k in [0, count) over `threads` workers in contiguous
// chunks. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(long count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<long>(threads, std::max(1L, count)));
  if (threads <= 1) {
    for (long k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const long chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          const long lo = t * chunk;
          const long hi = std::min(count, lo + chunk);
          for (long k = lo; k < hi; ++k) fn(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace restart_rank
