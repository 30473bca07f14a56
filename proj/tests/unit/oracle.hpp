#pragma once

// Reference arithmetic for the tests: bit-serial, no tables, no shared code
// with the library.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

struct Gf {
  unsigned n;
  std::uint64_t poly;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t x = a;
    std::uint32_t r = 0;
    while (b) {
      if (b & 1) r ^= static_cast<std::uint32_t>(x);
      b >>= 1;
      x <<= 1;
      if (x >> n) x ^= poly;
    }
    return r;
  }

  std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  std::uint32_t inv(std::uint32_t x) const { return pow(x, (std::uint64_t{1} << n) - 2); }

  // x + x^2 + ... + x^(2^(n-1)) lands in {0, 1}
  unsigned trace(std::uint32_t x) const {
    std::uint32_t s = 0;
    std::uint32_t y = x;
    for (unsigned k = 0; k < n; ++k) {
      s ^= y;
      y = mul(y, y);
    }
    return s & 1;
  }

  std::uint32_t size() const { return 1u << n; }
};

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..deg/2.
inline bool irreducible_gf2(std::uint64_t p) {
  int deg = 63 - __builtin_clzll(p);
  if (deg < 1) return false;
  for (std::uint64_t d = 2; d < (std::uint64_t{1} << (deg / 2 + 1)); ++d) {
    std::uint64_t r = p;
    const int dd = 63 - __builtin_clzll(d);
    while (r && 63 - __builtin_clzll(r) >= dd) r ^= d << ((63 - __builtin_clzll(r)) - dd);
    if (r == 0) return false;
  }
  return true;
}

/// Walsh value by definition.
inline std::vector<std::int64_t> walsh(const Gf& f, const std::vector<std::uint8_t>& table) {
  std::vector<std::int64_t> out(f.size());
  for (std::uint32_t u = 0; u < f.size(); ++u) {
    std::int64_t s = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x) s += ((table[x] ^ f.trace(f.mul(u, x))) ? -1 : 1);
    out[u] = s;
  }
  return out;
}

inline std::uint32_t uniformity(const std::vector<std::uint32_t>& F, unsigned n) {
  std::uint32_t best = 0;
  const std::uint32_t size = 1u << n;
  std::vector<std::uint32_t> c(size);
  for (std::uint32_t a = 1; a < size; ++a) {
    std::fill(c.begin(), c.end(), 0);
    for (std::uint32_t x = 0; x < size; ++x) ++c[F[x] ^ F[x ^ a]];
    for (auto v : c) best = std::max(best, v);
  }
  return best;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace oracle
