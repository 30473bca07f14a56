#include "apnlab/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace apnlab::gf2 {

namespace {

constexpr std::array<Poly, 33> kReductionPolys = {
    0x0,        0x2,        0x7,        0xb,        0x13,       0x25,      0x43,
    0x83,       0x11b,      0x203,      0x409,      0x805,      0x1009,    0x201b,
    0x4021,     0x8003,     0x1002b,    0x20009,    0x40009,    0x80027,   0x100009,
    0x200005,   0x400003,   0x800021,   0x100001b,  0x2000009,  0x400001b, 0x8000027,
    0x10000003, 0x20000005, 0x40000003, 0x80000009, 0x10000008d,
};

}  // namespace

int degree(Poly p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

Poly mod(Poly a, Poly m) {
  const int dm = degree(m);
  if (dm < 0) throw std::invalid_argument("gf2::mod: zero modulus");
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

Poly mulmod(Poly a, Poly b, Poly m) {
  const int dm = degree(m);
  if (dm < 1 || dm > 63) throw std::invalid_argument("gf2::mulmod: bad modulus degree");
  a = mod(a, m);
  b = mod(b, m);
  const Poly top = Poly{1} << dm;
  Poly r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= m;
  }
  return r;
}

Poly gcd(Poly a, Poly b) {
  while (b != 0) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(Poly p) {
  const int d = degree(p);
  if (d < 1) return false;
  if (d > 62) throw std::invalid_argument("gf2::is_irreducible: degree too large");
  const Poly x = 2;
  Poly y = mod(x, p);
  for (int k = 1; k <= d / 2; ++k) {
    y = mulmod(y, y, p);
    if (gcd(p, y ^ mod(x, p)) != 1) return false;
  }
  return true;
}

Poly default_reduction_poly(unsigned n) {
  if (n < 1 || n > 32) throw std::invalid_argument("default_reduction_poly: n must be in 1..32");
  return kReductionPolys[n];
}

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept {
  std::uint64_t r = 0;
  std::uint64_t aa = a;
  while (b != 0) {
    if (b & 1) r ^= aa;
    b >>= 1;
    aa <<= 1;
  }
  return r;
}

LinearMap::LinearMap(std::span<const std::uint32_t> columns) {
  if (columns.size() > 32) throw std::invalid_argument("LinearMap: at most 32 columns");
  for (std::size_t byte = 0; byte < 4; ++byte) {
    auto& table = tables_[byte];
    for (std::uint32_t v = 1; v < 256; ++v) {
      const int low = std::countr_zero(v);
      const std::size_t col = byte * 8 + static_cast<std::size_t>(low);
      const std::uint32_t image = col < columns.size() ? columns[col] : 0;
      table[v] = table[v & (v - 1)] ^ image;
    }
  }
}

bool Basis::insert(std::uint32_t v) {
  if (rows_.size() >= 64) throw std::length_error("gf2::Basis: more than 64 vectors");
  std::uint64_t combo = std::uint64_t{1} << rows_.size();
  for (const Row& row : rows_) {
    if ((v >> row.pivot) & 1) {
      v ^= row.vec;
      combo ^= row.combo;
    }
  }
  if (v == 0) return false;
  const int pivot = 31 - std::countl_zero(v);
  // Keep rows fully reduced on their pivots.
  for (Row& row : rows_) {
    if ((row.vec >> pivot) & 1) {
      row.vec ^= v;
      row.combo ^= combo;
    }
  }
  rows_.push_back({v, combo, pivot});
  return true;
}

std::optional<std::uint64_t> Basis::coordinates(std::uint32_t v) const {
  std::uint64_t combo = 0;
  for (const Row& row : rows_) {
    if ((v >> row.pivot) & 1) {
      v ^= row.vec;
      combo ^= row.combo;
    }
  }
  if (v != 0) return std::nullopt;
  return combo;
}

}  // namespace apnlab::gf2
