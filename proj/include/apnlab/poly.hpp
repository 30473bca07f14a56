#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apnlab/field.hpp"

namespace apnlab {

/// Dense polynomial over GF(2^n), lowest degree first. The zero polynomial has
/// no coefficients; otherwise the leading coefficient is nonzero.
class FieldPoly {
 public:
  FieldPoly(std::shared_ptr<const Field> field, std::vector<Elem> coeffs);

  static FieldPoly zero(std::shared_ptr<const Field> field);
  static FieldPoly monomial(std::shared_ptr<const Field> field, unsigned degree, Elem coeff = 1);
  /// X^s + 1 (= X^s - 1 in characteristic 2).
  static FieldPoly x_pow_minus_one(std::shared_ptr<const Field> field, unsigned s);
  /// Lift a packed GF(2) polynomial into GF(2^n)[X].
  static FieldPoly from_gf2(std::shared_ptr<const Field> field, gf2::Poly p);
  /// "c0,c1,..." with hex coefficients, lowest degree first.
  static FieldPoly parse(std::shared_ptr<const Field> field, std::string_view text);

  const Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Elem leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  Elem coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0; }

  /// Horner evaluation at a point of the coefficient field.
  Elem operator()(Elem x) const noexcept;
  FieldPoly monic() const;
  /// Formal derivative; in characteristic 2 only odd-degree terms survive.
  FieldPoly derivative() const;
  std::string to_string() const;

  friend FieldPoly operator+(const FieldPoly& a, const FieldPoly& b);
  friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);
  friend bool operator==(const FieldPoly& a, const FieldPoly& b);

  /// Euclidean division; throws std::domain_error for a zero divisor.
  static std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& a, const FieldPoly& b);

 private:
  void normalize();
  void require_same_field(const FieldPoly& other) const;

  std::shared_ptr<const Field> field_;
  std::vector<Elem> coeffs_;
};

/// Monic gcd by the Euclidean algorithm.
FieldPoly poly_gcd(const FieldPoly& a, const FieldPoly& b);

/// gcd(P, P') == 1.
bool is_squarefree(const FieldPoly& p);

/// Smallest-bits root in the coefficient field, by exhaustive evaluation.
std::optional<Elem> has_root_in_field(const FieldPoly& p);

/// Roots of p (lifted to GF(2^(n m))) counted by exhaustive search.
std::size_t count_roots_in_extension(const FieldPoly& p, unsigned m);

/// Irreducibility for 2 <= deg <= 5: no root in GF(2^(n m)) for m <= deg/2.
bool is_irreducible_by_roots(const FieldPoly& p);

struct SplittingProfile {
  unsigned degree = 0;               // deg P over GF(2)
  unsigned m = 0;                    // extension degree of the coefficient field
  unsigned d = 0;                    // gcd(deg P, m)
  std::vector<unsigned> extension;   // j values examined: roots counted in GF(2^(m j))
  std::vector<std::size_t> predicted;
  std::vector<std::size_t> observed;
  bool matches = false;
};

/// Checks the predicted splitting of an irreducible P over GF(2) in GF(2^m)[X]
/// (d = gcd(deg P, m) factors of degree deg P / d) through root counts in
/// GF(2^(m j)), j = 1..deg P. Requires deg(P) * m <= 20.
SplittingProfile coprime_degree_irreducibility_check(gf2::Poly p, unsigned m);

}  // namespace apnlab
