#include "apnlab/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "apnlab/runtime.hpp"

namespace apnlab {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field::Field(unsigned n) : Field(n, gf2::default_reduction_poly(n)) {}

Field::Field(unsigned n, gf2::Poly reduction_poly) : n_(n), poly_(reduction_poly) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("Field: n must be in 1..32");
  if (gf2::degree(reduction_poly) != static_cast<int>(n))
    throw std::invalid_argument("Field: reduction polynomial must have degree n");
  if (!gf2::is_irreducible(reduction_poly))
    throw std::invalid_argument("Field: reduction polynomial is reducible over GF(2)");
  init();
}

void Field::init() {
  const std::uint64_t order_n = group_order();
  const auto factors = prime_factors(order_n);
  primitive_ = 0;
  for (std::uint64_t g = 1; g < size(); ++g) {
    bool full = true;
    for (std::uint64_t p : factors) {
      if (pow(static_cast<Elem>(g), order_n / p) == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      primitive_ = static_cast<Elem>(g);
      break;
    }
  }
  if (primitive_ == 0) throw std::logic_error("Field: no primitive element found");

  if (n_ <= kLogTableMaxDegree) {
    log_.assign(size(), 0);
    exp_.assign(2 * order_n, 0);
    Elem v = 1;
    for (std::uint64_t e = 0; e < order_n; ++e) {
      exp_[e] = v;
      exp_[e + order_n] = v;
      log_[v] = static_cast<std::uint32_t>(e);
      v = mul_slow(v, primitive_);
    }
    has_logs_ = true;
  }

  trace_mask_ = 0;
  for (unsigned k = 0; k < n_; ++k) {
    const Elem basis = Elem{1} << k;
    Elem acc = 0;
    Elem y = basis;
    for (unsigned j = 0; j < n_; ++j) {
      acc ^= y;
      y = square(y);
    }
    if (acc != 0 && acc != 1) throw std::logic_error("Field: trace left GF(2)");
    trace_mask_ |= acc << k;
  }

  if (is_even()) {
    const unsigned h = n_ / 2;
    std::vector<std::uint32_t> cols(n_);
    for (unsigned k = 0; k < n_; ++k) cols[k] = frobenius(Elem{1} << k, h);
    half_frobenius_ = gf2::LinearMap(cols);
    half_ = std::make_shared<const Field>(h);
    half_embed_ = std::make_shared<const Embedding>(*half_, *this);
    half_elements_.reserve(half_->size());
    for (std::uint64_t x = 0; x < half_->size(); ++x)
      half_elements_.push_back(half_embed_->to_big(static_cast<Elem>(x)));
    std::sort(half_elements_.begin(), half_elements_.end());
  }
}

void Field::check(Elem x) const {
  if (!contains(x))
    throw std::invalid_argument("element " + std::to_string(x) + " is not in GF(2^" +
                                std::to_string(n_) + ")");
}

Elem Field::mul_slow(Elem x, Elem y) const noexcept {
  std::uint64_t r = gf2::clmul(x, y);
  for (int bit = 2 * static_cast<int>(n_) - 2; bit >= static_cast<int>(n_); --bit)
    if ((r >> bit) & 1) r ^= poly_ << (bit - static_cast<int>(n_));
  return static_cast<Elem>(r);
}

Elem Field::pow(Elem x, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (x == 0) return 0;
  if (has_logs_) {
    const std::uint64_t order_n = group_order();
    const auto l = static_cast<unsigned __int128>(log_[x]) * (e % order_n);
    return exp_[static_cast<std::uint64_t>(l % order_n)];
  }
  Elem result = 1;
  Elem base = x;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::inverse(Elem x) const {
  if (x == 0) throw std::domain_error("inverse of zero");
  check(x);
  if (has_logs_) return exp_[(group_order() - log_[x]) % group_order()];
  return pow(x, group_order() - 1);
}

std::uint64_t Field::order(Elem x) const {
  if (x == 0) throw std::domain_error("order of zero");
  std::uint64_t ord = group_order();
  for (std::uint64_t p : prime_factors(group_order())) {
    while (ord % p == 0 && pow(x, ord / p) == 1) ord /= p;
  }
  return ord;
}

Elem Field::frobenius(Elem x, std::uint64_t a) const noexcept {
  const std::uint64_t steps = a % n_;
  for (std::uint64_t k = 0; k < steps; ++k) x = square(x);
  return x;
}

bool Field::is_in_subfield(Elem x, unsigned s) const {
  if (s == 0 || n_ % s != 0)
    throw std::invalid_argument("is_in_subfield: s must divide n");
  return frobenius(x, s) == x;
}

std::uint32_t Field::log(Elem x) const {
  if (!has_logs_) throw std::logic_error("Field::log: no log tables for this degree");
  if (x == 0 || !contains(x)) throw std::domain_error("Field::log: argument must be nonzero");
  return log_[x];
}

Elem Field::exp(std::uint64_t e) const noexcept {
  if (has_logs_) return exp_[e % group_order()];
  return pow(primitive_, e);
}

unsigned Field::half_degree() const {
  if (!is_even()) throw std::invalid_argument("half field requires even n");
  return n_ / 2;
}

Elem Field::rel_trace_half(Elem x) const {
  if (!is_even()) throw std::invalid_argument("rel_trace_half requires even n");
  return x ^ conj(x);
}

std::span<const Elem> Field::half_elements() const {
  if (!is_even()) throw std::invalid_argument("half field requires even n");
  return half_elements_;
}

const Field& Field::half_field() const {
  if (!is_even()) throw std::invalid_argument("half field requires even n");
  return *half_;
}

const Embedding& Field::half_embedding() const {
  if (!is_even()) throw std::invalid_argument("half field requires even n");
  return *half_embed_;
}

Elem Field::find_omega() const {
  if (!is_even()) throw std::invalid_argument("find_omega requires even n");
  for (std::uint64_t x0 = 1; x0 < size(); ++x0) {
    const Elem t = rel_trace_half(static_cast<Elem>(x0));
    if (t != 0) return div(static_cast<Elem>(x0), t);
  }
  throw std::logic_error("find_omega: relative trace vanished identically");
}

std::pair<Elem, Elem> Field::decompose(Elem X, Elem omega) const {
  if (!is_even()) throw std::invalid_argument("decompose requires even n");
  check(X);
  check(omega);
  if (in_half(omega)) throw std::invalid_argument("decompose: omega lies in the half field");
  const Elem inv_tw = inverse(rel_trace_half(omega));
  const Elem y = mul(rel_trace_half(X), inv_tw);
  const Elem x = mul(rel_trace_half(mul(X, conj(omega))), inv_tw);
  return {x, y};
}

Elem Field::recompose(Elem x, Elem y, Elem omega) const {
  if (!is_even()) throw std::invalid_argument("recompose requires even n");
  if (in_half(omega)) throw std::invalid_argument("recompose: omega lies in the half field");
  return x ^ mul(omega, y);
}

bool Field::prop_clef_check(Elem c, Elem omega) const {
  if (!is_even()) throw std::invalid_argument("prop_clef_check requires even n");
  check(c);
  check(omega);
  const std::uint64_t q = std::uint64_t{1} << half_degree();
  if (pow(c, q + 1) != 1) throw std::invalid_argument("prop_clef_check: c^(q+1) != 1");
  const Elem c_root = frobenius(c, n_ - 1);  // c^(2^(n-1))
  const Elem inv_root = inverse(c_root);
  const bool first = conj(inv_root) == mul(c, inv_root);
  const bool second = in_half(mul(omega ^ mul(c, conj(omega)), inv_root));
  return first && second;
}

PowerMapInfo Field::power_map_analysis(std::uint64_t i) const {
  if (i == 0) throw std::invalid_argument("power_map_analysis: i must be positive");
  PowerMapInfo info;
  info.d = std::gcd(i, group_order());
  info.is_permutation = info.d == 1;
  info.residue_count = group_order() / info.d;
  return info;
}

ClassDecomposition Field::class_decomposition(std::uint64_t i) const {
  if (n_ > 24) throw CapError("class_decomposition: n > 24");
  ClassDecomposition out;
  out.d = std::gcd(i, group_order());
  out.xi = exp(group_order() / out.d);
  out.kernel.reserve(out.d);
  Elem z = 1;
  for (std::uint64_t k = 0; k < out.d; ++k) {
    out.kernel.push_back(z);
    z = mul(z, out.xi);
  }
  std::vector<std::uint8_t> seen(size(), 0);
  out.representatives.reserve(group_order() / out.d);
  for (std::uint64_t x = 1; x < size(); ++x) {
    if (seen[x]) continue;
    out.representatives.push_back(static_cast<Elem>(x));
    for (Elem k : out.kernel) seen[mul(static_cast<Elem>(x), k)] = 1;
  }
  return out;
}

bool Field::is_kth_power(Elem x, std::uint64_t k) const {
  if (x == 0) throw std::domain_error("is_kth_power: x must be nonzero");
  check(x);
  const std::uint64_t d = std::gcd(k, group_order());
  return pow(x, group_order() / d) == 1;
}

// --- Embedding ----------------------------------------------------------------

Embedding::Embedding(const Field& small, const Field& big)
    : small_n_(small.degree()), big_n_(big.degree()) {
  if (big_n_ % small_n_ != 0)
    throw std::invalid_argument("Embedding: small degree must divide big degree");
  const gf2::Poly p = small.reduction_poly();
  auto eval_small_poly = [&](Elem r) {
    Elem acc = 0;
    for (int k = gf2::degree(p); k >= 0; --k) acc = big.mul(acc, r) ^ static_cast<Elem>((p >> k) & 1);
    return acc;
  };
  Elem root = 1;
  if (small_n_ > 1) {
    const std::uint64_t sub_order = small.group_order();
    const Elem gamma = big.pow(big.primitive(), big.group_order() / sub_order);
    bool found = false;
    Elem r = 1;
    for (std::uint64_t k = 0; k < sub_order; ++k) {
      if (eval_small_poly(r) == 0) {
        root = r;
        found = true;
        break;
      }
      r = big.mul(r, gamma);
    }
    if (!found) throw std::logic_error("Embedding: no root of the small reduction polynomial");
  }
  std::vector<std::uint32_t> cols(small_n_);
  Elem power = 1;
  for (unsigned k = 0; k < small_n_; ++k) {
    cols[k] = power;
    if (!image_.insert(power)) throw std::logic_error("Embedding: images are dependent");
    power = big.mul(power, root);
  }
  map_ = gf2::LinearMap(cols);
}

std::optional<Elem> Embedding::to_small(Elem y) const {
  auto coords = image_.coordinates(y);
  if (!coords) return std::nullopt;
  return static_cast<Elem>(*coords);
}

// --- FieldElem ------------------------------------------------------------------

FieldElem::FieldElem(std::shared_ptr<const Field> field, Elem bits)
    : field_(std::move(field)), bits_(bits) {
  if (!field_) throw std::invalid_argument("FieldElem: null field");
  field_->check(bits_);
}

namespace {
void require_same(const FieldElem& x, const FieldElem& y) {
  if (!(x.field() == y.field())) throw std::invalid_argument("mismatched fields");
}
}  // namespace

FieldElem operator+(const FieldElem& x, const FieldElem& y) {
  require_same(x, y);
  return FieldElem(x.field_, x.bits_ ^ y.bits_);
}

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
  require_same(x, y);
  return FieldElem(x.field_, x.field_->mul(x.bits_, y.bits_));
}

bool operator==(const FieldElem& x, const FieldElem& y) {
  return x.field() == y.field() && x.bits_ == y.bits_;
}

FieldElem FieldElem::pow(std::uint64_t e) const { return {field_, field_->pow(bits_, e)}; }
FieldElem FieldElem::inverse() const { return {field_, field_->inverse(bits_)}; }

// --- integer results --------------------------------------------------------------

boost::multiprecision::cpp_int count_subspaces(std::uint64_t p, unsigned n) {
  using boost::multiprecision::cpp_int;
  if (!is_prime(p)) throw std::invalid_argument("count_subspaces: p must be prime");
  if (n < 1) throw std::invalid_argument("count_subspaces: n must be positive");
  auto power = [p](unsigned e) {
    cpp_int v = 1;
    for (unsigned k = 0; k < e; ++k) v *= p;
    return v;
  };
  cpp_int total = 0;
  for (unsigned s = 0; s <= n; ++s) {
    cpp_int num = 1;
    cpp_int den = 1;
    for (unsigned k = 0; k < s; ++k) {
      num *= power(n - k) - 1;
      den *= power(s - k) - 1;
    }
    if (num % den != 0) throw std::logic_error("count_subspaces: inexact Gaussian binomial");
    total += num / den;
  }
  return total;
}

const char* to_string(GcdCase c) noexcept {
  switch (c) {
    case GcdCase::I_EVEN: return "I_EVEN";
    case GcdCase::I_ODD_HALF_EVEN: return "I_ODD_HALF_EVEN";
    case GcdCase::I_ODD_HALF_ODD: return "I_ODD_HALF_ODD";
  }
  return "?";
}

GcdLemmaResult gcd_lemma_suite(unsigned i, unsigned half_n) {
  if (i < 1 || i > 63 || half_n < 1 || half_n > 62)
    throw std::invalid_argument("gcd_lemma_suite: need 1 <= i <= 63, 1 <= half_n <= 62");
  if (std::gcd(i, half_n) != 1) throw std::invalid_argument("gcd_lemma_suite: gcd(i, n/2) != 1");

  const std::uint64_t plus_i = (std::uint64_t{1} << i) + 1;
  const std::uint64_t minus_i = (std::uint64_t{1} << i) - 1;
  const bool odd_i = (i % 2) == 1;
  if ((plus_i % 3 == 0) != odd_i) throw std::logic_error("parity rule failed for 2^i + 1");
  if ((minus_i % 3 == 0) != !odd_i) throw std::logic_error("parity rule failed for 2^i - 1");

  const std::uint64_t plus_h = (std::uint64_t{1} << half_n) + 1;
  const std::uint64_t minus_h = (std::uint64_t{1} << half_n) - 1;

  GcdLemmaResult r;
  r.g = std::gcd(plus_i, plus_h);
  std::uint64_t expected = 1;
  if (!odd_i) {
    r.case_tag = GcdCase::I_EVEN;
  } else if (half_n % 2 == 0) {
    r.case_tag = GcdCase::I_ODD_HALF_EVEN;
  } else {
    r.case_tag = GcdCase::I_ODD_HALF_ODD;
    expected = 3;
  }
  if (r.g != expected) throw std::logic_error("gcd case table contradicted");

  const unsigned g_in = std::gcd(i, 2 * half_n);
  const auto product = static_cast<unsigned __int128>(std::gcd(plus_i, minus_h)) * r.g *
                       ((std::uint64_t{1} << g_in) - 1);
  r.boxed_product = static_cast<std::uint64_t>(product);
  return r;
}

}  // namespace apnlab
