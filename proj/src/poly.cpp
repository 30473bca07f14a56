#include "apnlab/poly.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "apnlab/runtime.hpp"

namespace apnlab {

namespace {

constexpr unsigned kExtensionRootCap = 20;

std::shared_ptr<const Field> require_field(std::shared_ptr<const Field> f) {
  if (!f) throw std::invalid_argument("FieldPoly: null field");
  return f;
}

}  // namespace

FieldPoly::FieldPoly(std::shared_ptr<const Field> field, std::vector<Elem> coeffs)
    : field_(require_field(std::move(field))), coeffs_(std::move(coeffs)) {
  for (Elem c : coeffs_) field_->check(c);
  normalize();
}

FieldPoly FieldPoly::zero(std::shared_ptr<const Field> field) { return {std::move(field), {}}; }

FieldPoly FieldPoly::monomial(std::shared_ptr<const Field> field, unsigned degree, Elem coeff) {
  std::vector<Elem> c(degree + 1, 0);
  c[degree] = coeff;
  return {std::move(field), std::move(c)};
}

FieldPoly FieldPoly::x_pow_minus_one(std::shared_ptr<const Field> field, unsigned s) {
  std::vector<Elem> c(s + 1, 0);
  c[0] ^= 1;
  c[s] ^= 1;
  return {std::move(field), std::move(c)};
}

FieldPoly FieldPoly::from_gf2(std::shared_ptr<const Field> field, gf2::Poly p) {
  std::vector<Elem> c;
  for (int k = 0; k <= gf2::degree(p); ++k) c.push_back(static_cast<Elem>((p >> k) & 1));
  return {std::move(field), std::move(c)};
}

FieldPoly FieldPoly::parse(std::shared_ptr<const Field> field, std::string_view text) {
  std::vector<Elem> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) tok.remove_prefix(2);
    Elem v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("FieldPoly::parse: bad coefficient '" + std::string(tok) + "'");
    c.push_back(v);
    pos = end + 1;
  }
  return {std::move(field), std::move(c)};
}

void FieldPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void FieldPoly::require_same_field(const FieldPoly& other) const {
  if (!(*field_ == *other.field_)) throw std::invalid_argument("FieldPoly: mismatched fields");
}

Elem FieldPoly::operator()(Elem x) const noexcept {
  Elem acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_->mul(acc, x) ^ *it;
  return acc;
}

FieldPoly FieldPoly::monic() const {
  if (is_zero()) return *this;
  const Elem inv = field_->inverse(leading());
  std::vector<Elem> c(coeffs_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = field_->mul(coeffs_[k], inv);
  return {field_, std::move(c)};
}

FieldPoly FieldPoly::derivative() const {
  std::vector<Elem> c;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c.push_back((k % 2 == 1) ? coeffs_[k] : 0);
  return {field_, std::move(c)};
}

std::string FieldPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  char buf[16];
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    std::snprintf(buf, sizeof buf, "%x", coeffs_[k]);
    out += buf;
  }
  return out;
}

FieldPoly operator+(const FieldPoly& a, const FieldPoly& b) {
  a.require_same_field(b);
  std::vector<Elem> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] ^= a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] ^= b.coeffs_[k];
  return {a.field_, std::move(c)};
}

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
  a.require_same_field(b);
  if (a.is_zero() || b.is_zero()) return FieldPoly::zero(a.field_);
  std::vector<Elem> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] ^= a.field_->mul(a.coeffs_[i], b.coeffs_[j]);
  return {a.field_, std::move(c)};
}

bool operator==(const FieldPoly& a, const FieldPoly& b) {
  return *a.field_ == *b.field_ && a.coeffs_ == b.coeffs_;
}

std::pair<FieldPoly, FieldPoly> FieldPoly::divmod(const FieldPoly& a, const FieldPoly& b) {
  a.require_same_field(b);
  if (b.is_zero()) throw std::domain_error("FieldPoly::divmod: division by zero polynomial");
  const Field& f = *a.field_;
  std::vector<Elem> rem = a.coeffs_;
  const int db = b.degree();
  if (a.degree() < db) return {zero(a.field_), a};
  std::vector<Elem> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const Elem inv_lead = f.inverse(b.leading());
  for (int k = a.degree(); k >= db; --k) {
    const Elem top = rem[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    const Elem factor = f.mul(top, inv_lead);
    quo[static_cast<std::size_t>(k - db)] = factor;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] ^= f.mul(factor, b.coeffs_[static_cast<std::size_t>(j)]);
  }
  return {FieldPoly(a.field_, std::move(quo)), FieldPoly(a.field_, std::move(rem))};
}

FieldPoly poly_gcd(const FieldPoly& a, const FieldPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_gcd: both polynomials are zero");
  FieldPoly x = a;
  FieldPoly y = b;
  while (!y.is_zero()) {
    FieldPoly r = FieldPoly::divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

bool is_squarefree(const FieldPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  const FieldPoly dp = p.derivative();
  if (dp.is_zero()) return p.degree() == 0;
  return poly_gcd(p, dp).degree() == 0;
}

std::optional<Elem> has_root_in_field(const FieldPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("has_root_in_field: degree must be >= 1");
  require_within_cap(p.field().degree(), kDefaultExhaustiveCap, "has_root_in_field");
  for (std::uint64_t x = 0; x < p.field().size(); ++x)
    if (p(static_cast<Elem>(x)) == 0) return static_cast<Elem>(x);
  return std::nullopt;
}

std::size_t count_roots_in_extension(const FieldPoly& p, unsigned m) {
  if (m == 0) throw std::invalid_argument("count_roots_in_extension: m must be positive");
  const unsigned big_n = p.field().degree() * m;
  require_within_cap(big_n, kExtensionRootCap, "count_roots_in_extension");
  auto big = std::make_shared<const Field>(big_n);
  const Embedding embed(p.field(), *big);
  std::vector<Elem> lifted;
  for (Elem c : p.coeffs()) lifted.push_back(embed.to_big(c));
  const FieldPoly q(big, std::move(lifted));
  std::size_t roots = 0;
  for (std::uint64_t x = 0; x < big->size(); ++x)
    if (q(static_cast<Elem>(x)) == 0) ++roots;
  return roots;
}

bool is_irreducible_by_roots(const FieldPoly& p) {
  const int deg = p.degree();
  if (deg < 2 || deg > 5)
    throw std::invalid_argument("is_irreducible_by_roots: degree must be in 2..5");
  if (has_root_in_field(p)) return false;
  for (unsigned m = 2; m <= static_cast<unsigned>(deg) / 2; ++m)
    if (count_roots_in_extension(p, m) != 0) return false;
  return true;
}

SplittingProfile coprime_degree_irreducibility_check(gf2::Poly p, unsigned m) {
  const int deg = gf2::degree(p);
  if (deg < 1) throw std::invalid_argument("coprime_degree_irreducibility_check: degree must be >= 1");
  if (m < 1) throw std::invalid_argument("coprime_degree_irreducibility_check: m must be positive");
  if (static_cast<unsigned>(deg) * m > 20)
    throw CapError("coprime_degree_irreducibility_check: deg(P) * m > 20");
  if (!gf2::is_irreducible(p))
    throw std::invalid_argument("coprime_degree_irreducibility_check: P is reducible over GF(2)");

  SplittingProfile out;
  out.degree = static_cast<unsigned>(deg);
  out.m = m;
  out.d = std::gcd(out.degree, m);
  const unsigned factor_degree = out.degree / out.d;
  out.matches = true;
  for (unsigned j = 1; j <= out.degree; ++j) {
    const Field ext(m * j);
    std::size_t roots = 0;
    for (std::uint64_t x = 0; x < ext.size(); ++x) {
      Elem acc = 0;
      for (int k = deg; k >= 0; --k) acc = ext.mul(acc, static_cast<Elem>(x)) ^ static_cast<Elem>((p >> k) & 1);
      if (acc == 0) ++roots;
    }
    const std::size_t predicted = (j % factor_degree == 0) ? out.degree : 0;
    out.extension.push_back(j);
    out.predicted.push_back(predicted);
    out.observed.push_back(roots);
    if (roots != predicted) out.matches = false;
  }
  return out;
}

}  // namespace apnlab
