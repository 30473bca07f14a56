#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace apnlab {

/// Thrown when an exhaustive computation would exceed a size cap.
class CapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Default cap on n for exhaustive APN/bent/root sweeps.
inline constexpr unsigned kDefaultExhaustiveCap = 16;

/// Effective cap for a sweep whose built-in default is `default_cap`.
/// Raised by set_cap_override() or the APNLAB_MAX_N environment variable.
unsigned exhaustive_cap(unsigned default_cap = kDefaultExhaustiveCap);
void set_cap_override(unsigned max_n);  // 0 clears the override
void require_within_cap(unsigned n, unsigned default_cap, const char* what);

/// Worker count used by the parallel sweeps (>= 1).
unsigned worker_count();
void set_worker_count(unsigned workers);  // 0 = hardware concurrency

/// Runs body(index, worker) for index in [0, count). Tasks are independent;
/// any merge must happen by index so results do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, Body&& body, unsigned workers = worker_count()) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) body(k, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace apnlab
