#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apnlab/field.hpp"
#include "apnlab/spectrum.hpp"

namespace apnlab {

enum class Family { A_FAUX, A_OPTIMAL, B, C, D, E };
const char* to_string(Family f) noexcept;
Family parse_family(std::string_view name);  // throws std::invalid_argument

enum class IsoKind { UNIT, SCALED, FROBENIUS_MIX, LINEARIZED };
const char* to_string(IsoKind k) noexcept;
IsoKind parse_iso_kind(std::string_view name);

/// L(u, v) = sum_k lambda[k] u^(2^k) + mu v for u, v in the embedded half
/// field, k < n/2. Construction rejects maps whose image is not the whole
/// field.
class Isomorphism {
 public:
  /// u + omega v.
  static Isomorphism unit(const Field& field, Elem omega);
  /// lambda u + v.
  static Isomorphism scaled(const Field& field, Elem lambda);
  /// u + s u^(2^i) + v.
  static Isomorphism frobenius_mix(const Field& field, Elem s, unsigned i);
  static Isomorphism linearized(const Field& field, std::vector<Elem> lambda, Elem mu,
                                IsoKind kind = IsoKind::LINEARIZED);

  IsoKind kind() const noexcept { return kind_; }
  const std::vector<Elem>& lambda() const noexcept { return lambda_; }
  Elem mu() const noexcept { return mu_; }
  Elem operator()(const Field& field, Elem u, Elem v) const noexcept;

  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;

 private:
  Isomorphism(IsoKind kind, std::vector<Elem> lambda, Elem mu) : kind_(kind), lambda_(std::move(lambda)), mu_(mu) {}

  IsoKind kind_;
  std::vector<Elem> lambda_;
  Elem mu_;
};

/// Throws std::invalid_argument when the parameters do not give a bijection.
Isomorphism make_isomorphism_L(const Field& field, IsoKind kind, std::vector<Elem> lambda, Elem mu);

/// Rank over GF(2) of the image of L, i.e. log2 |L(F_q x F_q)|.
unsigned isomorphism_image_rank(const Field& field, const std::vector<Elem>& lambda, Elem mu);

/// B(x) = x^(q+1), q = 2^(n/2).
VecFn bent_B(const Field& field);
/// x -> x + x^q applied to g.
VecFn half_trace_of(const Field& field, const std::function<Elem(Elem)>& g);
/// x -> L(B(x), G(x)).
VecFn assemble(const Field& field, const VecFn& B, const VecFn& G, const Isomorphism& L);

/// For every a != 0, b and half-field d, G(aX+b) + G(aX+b+a) = d has at most
/// two solutions X in the half field. Coset sweep, O(4^n); n <= 12.
bool g_condition_check(const Field& field, const VecFn& G);
/// Same statement evaluated literally over all (a, b, X); n <= 10.
bool g_condition_check_literal(const Field& field, const VecFn& G);

/// (i) (aX+b)^(2^k+2^j) + (aX+a+b)^(2^k+2^j)
///       = a^(2^k+2^j) (X^(2^k) + X^(2^j) + 1) + a^(2^k) b^(2^j) + a^(2^j) b^(2^k)
///     at every X of the field;
/// (ii) with i = |k - j| and gcd(i, n) = 1, X^(2^i) + X + c has 0 or 2 roots
///     for every c.
bool gold_identity_check(const Field& field, Elem a, Elem b, unsigned k, unsigned j);

// --- families ----------------------------------------------------------------

struct FamilyParams {
  Family family = Family::A_OPTIMAL;
  unsigned n = 0;
  std::optional<unsigned> i;
  std::optional<unsigned> j;
  std::optional<unsigned> s_exp;
  std::optional<Elem> b;
  std::optional<Elem> c;
  std::optional<Elem> t;
  std::optional<Elem> s_elem;
  std::vector<Elem> r;                 // Family B, r[k-1] multiplies X^(2^k (q+1)); empty = all zero
  std::optional<Isomorphism> L;        // Families D and E; default u + omega v

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct Hypothesis {
  std::string name;
  bool passed = false;
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

enum class Verdict { APN_VERIFIED, HYPOTHESIS_FAIL, NOT_APN };
const char* to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view name);

inline constexpr const char* kVacuous = "VACUOUS";

struct ApnCertificate {
  FamilyParams params;
  gf2::Poly poly = 0;
  std::vector<Hypothesis> hypothesis_report;
  std::optional<VecFn> function_table;
  std::optional<Isomorphism> L;  // set whenever F was tabulated
  std::optional<std::uint32_t> measured_uniformity;
  Verdict verdict = Verdict::HYPOTHESIS_FAIL;
  std::string diagnostic;

  bool hypotheses_pass() const noexcept;
};

/// F together with its split F = scale * L(B, G).
struct FamilyConstruction {
  VecFn F;
  VecFn B;
  VecFn G;
  Isomorphism L;
  Elem scale = 1;
};

/// Tabulates the family member without checking hypotheses. Throws
/// std::invalid_argument if a required parameter is missing or L is not
/// bijective.
FamilyConstruction construct_family(const Field& field, const FamilyParams& params);

/// Hypotheses in report order; `diagnostic` receives VACUOUS when the
/// coefficient conditions cannot be met by any element.
std::vector<Hypothesis> check_hypotheses(const Field& field, const FamilyParams& params, std::string* diagnostic = nullptr);

/// Checks hypotheses and, when they hold (always for Family D), tabulates F
/// and measures its differential uniformity.
ApnCertificate build_family(const Field& field, const FamilyParams& params);

ApnCertificate build_family_a(const Field& field, unsigned i, std::optional<Elem> c, Elem b, Family variant);
ApnCertificate build_family_b(const Field& field, unsigned s_exp, Elem b, Elem c, std::vector<Elem> r = {});
ApnCertificate build_family_c(const Field& field, unsigned i, Elem c, Elem s_elem);
ApnCertificate build_family_d(const Field& field, unsigned i, Elem c, Elem t, std::optional<Isomorphism> L = {});
ApnCertificate build_family_e(const Field& field, unsigned i, unsigned j, Elem c, std::optional<Isomorphism> L = {});

/// Every c with c^(q+1) = 1 that avoids the Family A exclusion class, ascending.
std::vector<Elem> family_a_admissible_c(const Field& field, unsigned i, Family variant);

/// Family E: no a != 0 with (a^(2^j+2^i) / c^(2^(n-1))) + conj(...) = 0.
bool family_e_trace_oracle(const Field& field, unsigned i, unsigned j, Elem c);

/// Fills parameters left unset with the first admissible value in ascending
/// order (exponents default to 1, or i = 0, j = 1 for Family E).
FamilyParams complete_params(const Field& field, FamilyParams params);

struct SearchOptions {
  std::size_t budget = 10;  // candidates sent to the full sweep
  std::optional<unsigned> i;
  std::optional<unsigned> j;
};

struct SearchResult {
  std::vector<ApnCertificate> certificates;  // APN_VERIFIED only, in candidate order
  std::vector<std::string> diagnostics;
  std::size_t candidates = 0;
};

SearchResult search_family(const Field& field, Family family, const SearchOptions& options = {});

}  // namespace apnlab
