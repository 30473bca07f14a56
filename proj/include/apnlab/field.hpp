#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "apnlab/gf2.hpp"

namespace apnlab {

/// Element of GF(2^n) in the polynomial basis of its field: bit k is the
/// coefficient of t^k. The owning Field gives the bits their meaning.
using Elem = std::uint32_t;

class Embedding;

/// Result of analysing the power map x -> x^i on GF(2^n)^*.
struct PowerMapInfo {
  std::uint64_t d = 0;  // gcd(i, 2^n - 1)
  bool is_permutation = false;
  std::uint64_t residue_count = 0;  // (2^n - 1) / d
};

/// Cosets of Ker(x -> x^d) partitioning GF(2^n)^*.
struct ClassDecomposition {
  std::uint64_t d = 0;
  Elem xi = 1;                       // alpha^((2^n - 1)/d)
  std::vector<Elem> kernel;          // xi^k, k = 0..d-1
  std::vector<Elem> representatives;  // smallest element of each coset, ascending
};

/// A concrete GF(2^n), n <= 32, with its derived data: a primitive element,
/// the trace mask, log tables for n <= 20, and (for even n) the half field
/// GF(2^(n/2)) both natively and as the fixed points of x -> x^(2^(n/2)).
///
/// Immutable after construction; every member function is safe to call from
/// several threads at once.
class Field {
 public:
  static constexpr unsigned kMaxDegree = 32;
  static constexpr unsigned kLogTableMaxDegree = 20;

  explicit Field(unsigned n);
  /// reduction_poly must be an irreducible degree-n polynomial over GF(2).
  Field(unsigned n, gf2::Poly reduction_poly);

  unsigned degree() const noexcept { return n_; }
  gf2::Poly reduction_poly() const noexcept { return poly_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }
  std::uint64_t group_order() const noexcept { return size() - 1; }
  Elem primitive() const noexcept { return primitive_; }
  bool contains(Elem x) const noexcept { return x < size(); }
  void check(Elem x) const;  // throws std::invalid_argument if x is not an element

  bool operator==(const Field& other) const noexcept {
    return n_ == other.n_ && poly_ == other.poly_;
  }

  // --- arithmetic -------------------------------------------------------
  static Elem add(Elem x, Elem y) noexcept { return x ^ y; }
  Elem mul(Elem x, Elem y) const noexcept {
    if (has_logs_) {
      if (x == 0 || y == 0) return 0;
      return exp_[log_[x] + log_[y]];
    }
    return mul_slow(x, y);
  }
  Elem square(Elem x) const noexcept { return mul(x, x); }
  Elem pow(Elem x, std::uint64_t e) const noexcept;
  Elem inverse(Elem x) const;  // std::domain_error on 0
  Elem div(Elem x, Elem y) const { return mul(x, inverse(y)); }
  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Elem x) const;

  /// x^(2^(a mod n)) by (a mod n) squarings.
  Elem frobenius(Elem x, std::uint64_t a) const noexcept;

  unsigned abs_trace(Elem x) const noexcept {
    return static_cast<unsigned>(__builtin_parity(x & trace_mask_));
  }
  /// Bit k is Tr(t^k); abs_trace(x) = parity(x & trace_mask()).
  std::uint32_t trace_mask() const noexcept { return trace_mask_; }

  /// x^(2^s) == x; requires s | n.
  bool is_in_subfield(Elem x, unsigned s) const;

  // --- discrete logs (n <= 20) -----------------------------------------
  bool has_log_tables() const noexcept { return has_logs_; }
  std::uint32_t log(Elem x) const;              // x != 0
  Elem exp(std::uint64_t e) const noexcept;     // alpha^e

  // --- half field (n even) ---------------------------------------------
  bool is_even() const noexcept { return n_ % 2 == 0; }
  unsigned half_degree() const;
  /// x^(2^(n/2)), the generator of Gal(GF(2^n)/GF(2^(n/2))).
  Elem conj(Elem x) const noexcept { return half_frobenius_(x); }
  bool in_half(Elem x) const noexcept { return is_even() && conj(x) == x; }
  /// Tr_{n/(n/2)}(x) = x + x^(2^(n/2)).
  Elem rel_trace_half(Elem x) const;
  /// Embedded copy of GF(2^(n/2)) in ascending bit order.
  std::span<const Elem> half_elements() const;
  const Field& half_field() const;
  const Embedding& half_embedding() const;

  Elem find_omega() const;
  std::pair<Elem, Elem> decompose(Elem X, Elem omega) const;
  Elem recompose(Elem x, Elem y, Elem omega) const;
  bool prop_clef_check(Elem c, Elem omega) const;

  // --- power residues --------------------------------------------------
  PowerMapInfo power_map_analysis(std::uint64_t i) const;
  ClassDecomposition class_decomposition(std::uint64_t i) const;
  bool is_kth_power(Elem x, std::uint64_t k) const;

 private:
  Elem mul_slow(Elem x, Elem y) const noexcept;
  void init();

  unsigned n_ = 0;
  gf2::Poly poly_ = 0;
  Elem primitive_ = 1;
  std::uint32_t trace_mask_ = 0;
  bool has_logs_ = false;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2*(2^n - 1) so log sums need no reduction
  gf2::LinearMap half_frobenius_;
  std::shared_ptr<const Field> half_;
  std::shared_ptr<const Embedding> half_embed_;
  std::vector<Elem> half_elements_;
};

/// Field embedding GF(2^s) -> GF(2^n), s | n, sending t to the first root of
/// the small field's reduction polynomial among the powers of
/// alpha^((2^n-1)/(2^s-1)).
class Embedding {
 public:
  Embedding(const Field& small, const Field& big);

  unsigned small_degree() const noexcept { return small_n_; }
  unsigned big_degree() const noexcept { return big_n_; }
  Elem to_big(Elem x) const noexcept { return map_(x); }
  /// Preimage of an element of the image, nullopt otherwise.
  std::optional<Elem> to_small(Elem y) const;

 private:
  unsigned small_n_;
  unsigned big_n_;
  gf2::LinearMap map_;
  gf2::Basis image_;
};

/// Checked element bound to its field; arithmetic between elements of
/// different fields throws std::invalid_argument.
class FieldElem {
 public:
  FieldElem(std::shared_ptr<const Field> field, Elem bits);

  Elem bits() const noexcept { return bits_; }
  const Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }

  friend FieldElem operator+(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
  friend bool operator==(const FieldElem& x, const FieldElem& y);
  FieldElem pow(std::uint64_t e) const;
  FieldElem inverse() const;

 private:
  std::shared_ptr<const Field> field_;
  Elem bits_;
};

// --- integer-only results -------------------------------------------------

/// Number of F_p-subspaces of F_{p^n}: sum of Gaussian binomials, exact.
boost::multiprecision::cpp_int count_subspaces(std::uint64_t p, unsigned n);

enum class GcdCase { I_EVEN, I_ODD_HALF_EVEN, I_ODD_HALF_ODD };

struct GcdLemmaResult {
  std::uint64_t g = 0;  // gcd(2^i + 1, 2^half_n + 1)
  GcdCase case_tag = GcdCase::I_EVEN;
  /// gcd(2^i+1, 2^half_n-1) * g * (2^gcd(i, 2 half_n) - 1); always 3.
  std::uint64_t boxed_product = 0;
};

/// gcd(2^i+1, 2^half_n+1) with its parity case. Requires gcd(i, half_n) = 1,
/// 1 <= i <= 63, 1 <= half_n <= 31. Throws std::logic_error if the case table
/// or the divisibility-by-3 parity rules are contradicted.
GcdLemmaResult gcd_lemma_suite(unsigned i, unsigned half_n);

const char* to_string(GcdCase c) noexcept;

}  // namespace apnlab
