#include "apnlab/runtime.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace apnlab {

namespace {

std::atomic<unsigned> g_cap_override{0};
std::atomic<unsigned> g_workers{0};

unsigned env_cap() {
  const char* raw = std::getenv("APNLAB_MAX_N");
  if (raw == nullptr) return 0;
  std::string_view text(raw);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return 0;
  return value;
}

}  // namespace

unsigned exhaustive_cap(unsigned default_cap) {
  const unsigned over = g_cap_override.load();
  if (over != 0) return std::max(over, default_cap);
  const unsigned env = env_cap();
  if (env != 0) return std::max(env, default_cap);
  return default_cap;
}

void set_cap_override(unsigned max_n) { g_cap_override.store(max_n); }

void require_within_cap(unsigned n, unsigned default_cap, const char* what) {
  const unsigned cap = exhaustive_cap(default_cap);
  if (n > cap) {
    throw CapError(std::string(what) + ": n=" + std::to_string(n) + " exceeds cap " +
                   std::to_string(cap) + " (set APNLAB_MAX_N or --override-caps)");
  }
}

unsigned worker_count() {
  const unsigned w = g_workers.load();
  if (w != 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(unsigned workers) { g_workers.store(workers); }

}  // namespace apnlab
