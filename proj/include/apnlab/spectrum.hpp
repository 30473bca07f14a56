#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apnlab/field.hpp"

namespace apnlab {

/// Truth table of a Boolean function on GF(2^n), indexed by element bits.
struct BoolFn {
  unsigned n = 0;
  std::vector<std::uint8_t> table;  // 2^n entries in {0, 1}

  BoolFn() = default;
  BoolFn(unsigned n, std::vector<std::uint8_t> table);
  static BoolFn constant(unsigned n, bool value);
  /// x -> Tr(a x^i).
  static BoolFn monomial_trace(const Field& field, Elem a, std::uint64_t i);
  std::uint8_t operator()(Elem x) const noexcept { return table[x]; }
};

/// Value table of an (n, m)-function.
struct VecFn {
  unsigned n = 0;
  unsigned m = 0;
  std::vector<Elem> table;  // 2^n entries below 2^m

  VecFn() = default;
  VecFn(unsigned n, unsigned m, std::vector<Elem> table);
  /// x -> x^e on GF(2^n).
  static VecFn power(const Field& field, std::uint64_t e);
  static VecFn tabulate(const Field& field, const std::function<Elem(Elem)>& f);
  Elem operator()(Elem x) const noexcept { return table[x]; }
};

/// chi_f(u) = sum_x (-1)^(f(x) + Tr(u x)), indexed by u.
struct WalshSpectrum {
  std::vector<std::int64_t> values;

  std::int64_t operator[](std::size_t u) const noexcept { return values[u]; }
  std::int64_t max_abs() const noexcept;
  /// sum_u chi(u)^2 (Parseval: 2^(2n)).
  std::int64_t energy() const noexcept;
  friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;
};

/// Direct double sum with the field product; n <= 20.
WalshSpectrum walsh_naive(const Field& field, const BoolFn& f);

/// The characters (-1)^Tr(u x) precomputed as packed bit rows so that many
/// functions can be transformed by the definition without recomputing field
/// products. n <= 14.
class CharacterTable {
 public:
  explicit CharacterTable(const Field& field);
  unsigned degree() const noexcept { return n_; }
  WalshSpectrum walsh(const BoolFn& f) const;

 private:
  unsigned n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;  // row u = bits Tr(u x)
};

/// Butterfly transform on the bit coordinates followed by the trace-dual
/// change of variables u -> (Tr(u t^j))_j. O(n 2^n); n <= 24.
WalshSpectrum walsh_fast(const Field& field, const BoolFn& f);

struct ClassWalsh {
  WalshSpectrum spectrum;
  std::uint64_t d = 0;                 // gcd(i, 2^n - 1)
  std::size_t classes = 0;             // (2^n - 1) / d
  std::size_t evaluations = 0;         // spectrum values computed by the class formula
};

/// Walsh spectrum of Tr(a x^i) evaluated once per power-residue class and
/// broadcast (the spectrum is constant on the cosets of Ker(x -> x^d)).
/// Requires a != 0, i >= 1 and n <= 20.
ClassWalsh walsh_monomial_by_classes(const Field& field, Elem a, std::uint64_t i);

/// Same evaluation order as walsh_monomial_by_classes but stops at the first
/// value outside {+-2^(n/2)}. `evaluations` reports how many were computed.
struct ClassBentProbe {
  bool bent = false;
  std::int64_t chi_zero = 0;
  std::size_t evaluations = 0;
};
ClassBentProbe probe_bent_by_classes(const Field& field, Elem a, std::uint64_t i);

/// Keeps the per-field trace table so that many exponents can be probed.
/// The field must outlive the prober.
class ClassProber {
 public:
  explicit ClassProber(const Field& field);
  ClassBentProbe probe(Elem a, std::uint64_t i) const;

 private:
  const Field& field_;
  std::vector<std::int8_t> tau_sign_;  // (-1)^Tr(alpha^e)
};

bool is_balanced(const Field& field, const BoolFn& f);
bool is_bent(const Field& field, const BoolFn& f);  // n even
bool is_bent(const WalshSpectrum& s, unsigned n);

/// chi_f(beta) == chi_g(beta / b) for all beta, where f = Tr(b^i x^i) and
/// g = Tr(x^i).
bool bent_monomial_equivalence_check(const Field& field, Elem b, std::uint64_t i);

enum class Sign { PLUS, MINUS };
const char* to_string(Sign s) noexcept;

struct BentSign {
  Sign sign = Sign::PLUS;
  std::uint64_t gcd_plus = 0;   // gcd(i, 2^(n/2) + 1)
  std::uint64_t gcd_minus = 0;  // gcd(i, 2^(n/2) - 1)
  /// chi(0) = +2^(n/2) iff gcd_plus == 1, and -2^(n/2) iff gcd_minus == 1.
  bool consistent = false;
};

/// Sign of chi_f(0) for a bent f = Tr(a x^i); throws std::invalid_argument if
/// f is not bent.
BentSign bent_sign_check(const Field& field, Elem a, std::uint64_t i);
BentSign bent_sign_from_chi_zero(unsigned n, std::int64_t chi_zero, std::uint64_t i);

// --- derivatives ------------------------------------------------------------

struct DifferentialSpectrum {
  /// Number of (a, b), a != 0, whose equation D_a F(x) = b has `count` solutions.
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::uint32_t uniformity = 0;
};

/// Full sweep over a != 0; n <= 16 unless the cap is raised.
DifferentialSpectrum differential_spectrum(const VecFn& F);
std::uint32_t differential_uniformity(const VecFn& F);
/// (n, n)-functions only; stops at the first count above 2.
bool is_apn(const VecFn& F);

/// For every a != 0, D_a B takes every half-field value exactly 2^(n/2) times
/// (B must map into the half field). When B is x^(q+1) the derivative is also
/// checked against Tr(a^q X) + a^(q+1) pointwise.
bool derivative_balance_check(const Field& field, const VecFn& B);

// --- S-box audit ---------------------------------------------------------------

struct SboxReport {
  unsigned n = 0;
  unsigned m = 0;
  std::string source;
  bool walsh_computed = false;
  std::int64_t walsh_max_abs = 0;
  std::int64_t nonlinearity = 0;
  bool balanced = false;
  bool bent = false;
  std::uint32_t differential_uniformity = 0;
  bool apn = false;
  std::map<std::uint32_t, std::uint64_t> histogram;
};

/// Largest n for which the component Walsh spectra are computed in an audit.
inline constexpr unsigned kAuditWalshCap = 12;

SboxReport audit_sbox(const VecFn& F, std::string source);

}  // namespace apnlab
