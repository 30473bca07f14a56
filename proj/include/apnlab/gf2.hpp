#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Bit-level helpers over GF(2): packed polynomials and small linear maps.
namespace apnlab::gf2 {

/// Polynomials over GF(2) packed into a word, bit k = coefficient of x^k.
using Poly = std::uint64_t;

int degree(Poly p) noexcept;  // -1 for the zero polynomial
Poly mod(Poly a, Poly m);
Poly mulmod(Poly a, Poly b, Poly m);
Poly gcd(Poly a, Poly b);

/// Ben-Or test: p has no factor of degree <= deg(p)/2.
bool is_irreducible(Poly p);

/// Lexicographically least irreducible polynomial of degree n (1 <= n <= 32).
Poly default_reduction_poly(unsigned n);

/// Carry-less product of two words of at most 32 bits.
std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept;

/// GF(2)-linear map on words of up to 32 bits, evaluated through byte tables.
class LinearMap {
 public:
  LinearMap() = default;
  /// columns[k] is the image of the k-th unit vector.
  explicit LinearMap(std::span<const std::uint32_t> columns);

  std::uint32_t operator()(std::uint32_t x) const noexcept {
    return tables_[0][x & 0xff] ^ tables_[1][(x >> 8) & 0xff] ^
           tables_[2][(x >> 16) & 0xff] ^ tables_[3][x >> 24];
  }

 private:
  std::array<std::array<std::uint32_t, 256>, 4> tables_{};
};

/// Incremental echelon basis that remembers how each reduced row was formed,
/// so membership queries also return coordinates in the inserted vectors.
class Basis {
 public:
  /// Returns false (and does not grow) when v is in the current span.
  bool insert(std::uint32_t v);
  /// Mask over insertion order (bit k = k-th accepted vector) or nullopt.
  std::optional<std::uint64_t> coordinates(std::uint32_t v) const;
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  struct Row {
    std::uint32_t vec;
    std::uint64_t combo;
    int pivot;
  };
  std::vector<Row> rows_;
};

}  // namespace apnlab::gf2
