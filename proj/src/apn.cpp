#include "apnlab/apn.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>

#include "apnlab/poly.hpp"
#include "apnlab/runtime.hpp"

namespace apnlab {

namespace {

constexpr unsigned kGConditionCap = 12;
constexpr unsigned kGConditionLiteralCap = 10;

using u128 = unsigned __int128;

void require_even(const Field& field, const char* what) {
  if (!field.is_even()) throw std::invalid_argument(std::string(what) + ": n must be even");
}

/// x^e for e >= 1 (0^e = 0), exponent reduced modulo 2^n - 1.
Elem power(const Field& f, Elem x, u128 e) {
  if (x == 0) return 0;
  return f.pow(x, static_cast<std::uint64_t>(e % f.group_order()));
}

u128 two_pow(unsigned k) { return u128{1} << k; }

std::uint64_t reduced_exponent(const Field& f, u128 k) {
  const std::uint64_t r = static_cast<std::uint64_t>(k % f.group_order());
  return r == 0 ? f.group_order() : r;
}

bool is_power_class(const Field& f, Elem x, u128 k) { return f.is_kth_power(x, reduced_exponent(f, k)); }

unsigned half_degree(const Field& f) { return f.half_degree(); }
std::uint64_t q_of(const Field& f) { return std::uint64_t{1} << f.half_degree(); }

template <class T>
T require(const std::optional<T>& v, const char* name) {
  if (!v) throw std::invalid_argument(std::string("missing parameter ") + name);
  return *v;
}

void check_exponent(const Field& f, unsigned e, const char* name) {
  if (e >= f.degree()) throw std::invalid_argument(std::string(name) + " must be below n");
}

void check_elem(const Field& f, const std::optional<Elem>& v) {
  if (v) f.check(*v);
}

// P(X) = X^(2^i+1) + u X^(2^i) + w X + 1 evaluated at every element.
bool has_root(const Field& f, unsigned i, Elem u, Elem w) {
  require_within_cap(f.degree(), kDefaultExhaustiveCap, "root scan");
  const u128 e = two_pow(i);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const Elem xe = power(f, static_cast<Elem>(x), e);
    const Elem v = f.mul(xe, static_cast<Elem>(x)) ^ f.mul(u, xe) ^ f.mul(w, static_cast<Elem>(x)) ^ 1;
    if (v == 0) return true;
  }
  return false;
}

bool family_c_irreducible(const Field& f, unsigned i, Elem c) {
  const unsigned deg = (1u << i) + 1;
  if (deg > 5) throw std::invalid_argument("Family C: irreducibility test supports deg P <= 5 (i <= 2)");
  if (deg == 3) return !has_root(f, i, c, f.conj(c));
  std::vector<Elem> coeffs(deg + 1, 0);
  coeffs[0] = 1;
  coeffs[1] = f.conj(c);
  coeffs[deg - 1] = c;
  coeffs[deg] = 1;
  return is_irreducible_by_roots(FieldPoly(std::make_shared<const Field>(f), std::move(coeffs)));
}

Elem family_d_u(const Field& f, Elem c, Elem t) { return f.conj(t) ^ c; }
Elem family_d_w(const Field& f, Elem c, Elem t) { return f.conj(c) ^ t; }

Isomorphism default_L(const Field& f) { return Isomorphism::unit(f, f.find_omega()); }

}  // namespace

// --- names ----------------------------------------------------------------------

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::A_FAUX: return "A_FAUX";
    case Family::A_OPTIMAL: return "A_OPTIMAL";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::A_FAUX, Family::A_OPTIMAL, Family::B, Family::C, Family::D, Family::E})
    if (name == to_string(f)) return f;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

const char* to_string(IsoKind k) noexcept {
  switch (k) {
    case IsoKind::UNIT: return "UNIT";
    case IsoKind::SCALED: return "SCALED";
    case IsoKind::FROBENIUS_MIX: return "FROBENIUS_MIX";
    case IsoKind::LINEARIZED: return "LINEARIZED";
  }
  return "?";
}

IsoKind parse_iso_kind(std::string_view name) {
  for (IsoKind k : {IsoKind::UNIT, IsoKind::SCALED, IsoKind::FROBENIUS_MIX, IsoKind::LINEARIZED})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown isomorphism kind '" + std::string(name) + "'");
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::APN_VERIFIED: return "APN_VERIFIED";
    case Verdict::HYPOTHESIS_FAIL: return "HYPOTHESIS_FAIL";
    case Verdict::NOT_APN: return "NOT_APN";
  }
  return "?";
}

Verdict parse_verdict(std::string_view name) {
  for (Verdict v : {Verdict::APN_VERIFIED, Verdict::HYPOTHESIS_FAIL, Verdict::NOT_APN})
    if (name == to_string(v)) return v;
  throw std::invalid_argument("unknown verdict '" + std::string(name) + "'");
}

// --- isomorphisms -----------------------------------------------------------------

Isomorphism Isomorphism::unit(const Field& field, Elem omega) {
  return linearized(field, {1}, omega, IsoKind::UNIT);
}

Isomorphism Isomorphism::scaled(const Field& field, Elem lambda) {
  return linearized(field, {lambda}, 1, IsoKind::SCALED);
}

Isomorphism Isomorphism::frobenius_mix(const Field& field, Elem s, unsigned i) {
  require_even(field, "isomorphism");
  const unsigned h = field.half_degree();
  std::vector<Elem> lambda(h, 0);
  lambda[0] ^= 1;
  lambda[i % h] ^= s;
  return linearized(field, std::move(lambda), 1, IsoKind::FROBENIUS_MIX);
}

Elem Isomorphism::operator()(const Field& field, Elem u, Elem v) const noexcept {
  Elem acc = field.mul(mu_, v);
  Elem up = u;
  for (Elem l : lambda_) {
    if (l != 0) acc ^= field.mul(l, up);
    up = field.square(up);
  }
  return acc;
}

namespace {

unsigned image_rank(const Field& field, const std::vector<Elem>& lambda, Elem mu) {
  const unsigned h = field.half_degree();
  const Embedding& emb = field.half_embedding();
  gf2::Basis basis;
  for (unsigned k = 0; k < h; ++k) {
    const Elem e = emb.to_big(Elem{1} << k);
    Elem lu = 0;
    Elem up = e;
    for (Elem l : lambda) {
      lu ^= field.mul(l, up);
      up = field.square(up);
    }
    basis.insert(lu);
    basis.insert(field.mul(mu, e));
  }
  return static_cast<unsigned>(basis.rank());
}

}  // namespace

unsigned isomorphism_image_rank(const Field& field, const std::vector<Elem>& lambda, Elem mu) {
  require_even(field, "isomorphism");
  if (lambda.size() > field.half_degree()) throw std::invalid_argument("isomorphism: at most n/2 Frobenius coefficients");
  for (Elem l : lambda) field.check(l);
  field.check(mu);
  return image_rank(field, lambda, mu);
}

Isomorphism Isomorphism::linearized(const Field& field, std::vector<Elem> lambda, Elem mu, IsoKind kind) {
  require_even(field, "isomorphism");
  const unsigned h = field.half_degree();
  if (lambda.size() > h) throw std::invalid_argument("isomorphism: at most n/2 Frobenius coefficients");
  for (Elem l : lambda) field.check(l);
  field.check(mu);
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  const unsigned rank = image_rank(field, lambda, mu);
  if (rank != field.degree())
    throw std::invalid_argument("isomorphism: L is not bijective (image has 2^" + std::to_string(rank) +
                                " elements)");
  return Isomorphism(kind, std::move(lambda), mu);
}

Isomorphism make_isomorphism_L(const Field& field, IsoKind kind, std::vector<Elem> lambda, Elem mu) {
  return Isomorphism::linearized(field, std::move(lambda), mu, kind);
}

// --- functions ----------------------------------------------------------------------

VecFn bent_B(const Field& field) {
  require_even(field, "bent_B");
  const std::uint64_t e = q_of(field) + 1;
  return VecFn::tabulate(field, [&](Elem x) { return power(field, x, e); });
}

VecFn half_trace_of(const Field& field, const std::function<Elem(Elem)>& g) {
  require_even(field, "half_trace_of");
  return VecFn::tabulate(field, [&](Elem x) { return field.rel_trace_half(g(x)); });
}

VecFn assemble(const Field& field, const VecFn& B, const VecFn& G, const Isomorphism& L) {
  if (B.n != field.degree() || G.n != field.degree()) throw std::invalid_argument("assemble: dimension mismatch");
  std::vector<Elem> t(field.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = L(field, B.table[x], G.table[x]);
  return {field.degree(), field.degree(), std::move(t)};
}

namespace {

void require_half_valued(const Field& field, const VecFn& G) {
  require_even(field, "g_condition_check");
  if (G.n != field.degree()) throw std::invalid_argument("g_condition_check: dimension mismatch");
  for (Elem v : G.table)
    if (!field.contains(v) || !field.in_half(v))
      throw std::invalid_argument("g_condition_check: G must take values in the half field");
}

}  // namespace

bool g_condition_check(const Field& field, const VecFn& G) {
  require_half_valued(field, G);
  require_within_cap(field.degree(), kGConditionCap, "g_condition_check");
  const Elem omega = field.find_omega();
  const auto half = field.half_elements();
  const std::size_t size = field.size();
  const unsigned workers = worker_count();
  std::vector<std::vector<std::uint32_t>> counts(workers, std::vector<std::uint32_t>(size, 0));
  std::atomic<bool> failed{false};
  // aX + b with X in F_q runs over a(w + F_q); the cosets w + F_q are omega y + F_q.
  parallel_for(
      size - 1,
      [&](std::size_t k, unsigned w) {
        if (failed.load(std::memory_order_relaxed)) return;
        const Elem a = static_cast<Elem>(k + 1);
        auto& c = counts[w];
        for (Elem y : half) {
          const Elem w0 = field.mul(omega, y);
          bool bad = false;
          for (Elem X : half) {
            const Elem p = field.mul(a, X ^ w0);
            if (++c[G.table[p] ^ G.table[p ^ a]] > 2) bad = true;
          }
          for (Elem X : half) {
            const Elem p = field.mul(a, X ^ w0);
            c[G.table[p] ^ G.table[p ^ a]] = 0;
          }
          if (bad) {
            failed.store(true, std::memory_order_relaxed);
            return;
          }
        }
      },
      workers);
  return !failed.load();
}

bool g_condition_check_literal(const Field& field, const VecFn& G) {
  require_half_valued(field, G);
  if (field.degree() > kGConditionLiteralCap)
    throw CapError("g_condition_check_literal: n exceeds " + std::to_string(kGConditionLiteralCap));
  const auto half = field.half_elements();
  const std::size_t size = field.size();
  std::vector<std::uint32_t> counts(size, 0);
  for (std::size_t a = 1; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      std::fill(counts.begin(), counts.end(), 0);
      for (Elem X : half) {
        const Elem p = field.mul(static_cast<Elem>(a), X) ^ static_cast<Elem>(b);
        const Elem d = G.table[p] ^ G.table[p ^ a];
        if (++counts[d] > 2) return false;
      }
    }
  }
  return true;
}

bool gold_identity_check(const Field& field, Elem a, Elem b, unsigned k, unsigned j) {
  field.check(a);
  field.check(b);
  const u128 ek = two_pow(k);
  const u128 ej = two_pow(j);
  const u128 e = ek + ej;
  const Elem ae = power(field, a, e);
  const Elem constant = field.mul(power(field, a, ek), power(field, b, ej)) ^
                        field.mul(power(field, a, ej), power(field, b, ek));
  for (std::uint64_t xs = 0; xs < field.size(); ++xs) {
    const Elem X = static_cast<Elem>(xs);
    const Elem z = field.mul(a, X) ^ b;
    const Elem lhs = power(field, z, e) ^ power(field, z ^ a, e);
    const Elem rhs = field.mul(ae, power(field, X, ek) ^ power(field, X, ej) ^ 1) ^ constant;
    if (lhs != rhs) return false;
  }
  const unsigned i = k > j ? k - j : j - k;
  if (i == 0 || std::gcd(i, field.degree()) != 1) return true;
  std::vector<std::uint32_t> counts(field.size(), 0);
  for (std::uint64_t xs = 0; xs < field.size(); ++xs) {
    const Elem X = static_cast<Elem>(xs);
    ++counts[power(field, X, two_pow(i)) ^ X];
  }
  return std::all_of(counts.begin(), counts.end(), [](std::uint32_t c) { return c == 0 || c == 2; });
}

// --- families -----------------------------------------------------------------------

bool ApnCertificate::hypotheses_pass() const noexcept {
  return std::all_of(hypothesis_report.begin(), hypothesis_report.end(), [](const Hypothesis& h) { return h.passed; });
}

std::vector<Elem> family_a_admissible_c(const Field& field, unsigned i, Family variant) {
  require_even(field, "Family A");
  const std::uint64_t q = q_of(field);
  const Elem g = field.pow(field.primitive(), q - 1);
  const u128 excl = (variant == Family::A_FAUX ? two_pow(i) + 1 : u128{3}) * (q - 1);
  std::vector<Elem> out;
  Elem c = 1;
  for (std::uint64_t k = 0; k <= q; ++k, c = field.mul(c, g))
    if (!is_power_class(field, c, excl)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

bool family_e_trace_oracle(const Field& field, unsigned i, unsigned j, Elem c) {
  require_even(field, "Family E");
  if (c == 0) throw std::invalid_argument("Family E: c must be nonzero");
  const Elem inv = field.inverse(field.frobenius(c, field.degree() - 1));
  const u128 e = two_pow(j) + two_pow(i);
  for (std::uint64_t a = 1; a < field.size(); ++a)
    if (field.rel_trace_half(field.mul(power(field, static_cast<Elem>(a), e), inv)) == 0) return false;
  return true;
}

std::vector<Hypothesis> check_hypotheses(const Field& field, const FamilyParams& p, std::string* diagnostic) {
  require_even(field, "family");
  if (p.n != field.degree()) throw std::invalid_argument("family: params.n does not match the field");
  check_elem(field, p.b);
  check_elem(field, p.c);
  check_elem(field, p.t);
  check_elem(field, p.s_elem);
  const unsigned h = half_degree(field);
  const std::uint64_t q = q_of(field);
  std::vector<Hypothesis> out;
  std::string diag;
  auto add = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };

  switch (p.family) {
    case Family::A_FAUX:
    case Family::A_OPTIMAL: {
      const unsigned i = require(p.i, "i");
      check_exponent(field, i, "i");
      add("gcd(i,n/2)=1", std::gcd(i, h) == 1);
      if (p.family == Family::A_OPTIMAL) {
        add("i odd", i % 2 == 1);
        add("n/2 odd", h % 2 == 1);
      }
      const std::string excl_name =
          p.family == Family::A_FAUX ? "c not in F*^((2^i+1)(q-1))" : "c not in F*^(3(q-1))";
      const bool vacuous = family_a_admissible_c(field, i, p.family).empty();
      if (vacuous) diag = kVacuous;
      if (!p.c || *p.c == 0) {
        add("c^(q+1)=1", false);
        add(excl_name, false);
        add("c b^q + b != 0", false);
        if (!vacuous) diag = "missing parameter c";
        break;
      }
      const Elem c = *p.c;
      const Elem b = p.b.value_or(0);
      add("c^(q+1)=1", field.pow(c, q + 1) == 1);
      const u128 excl = (p.family == Family::A_FAUX ? two_pow(i) + 1 : u128{3}) * (q - 1);
      add(excl_name, !is_power_class(field, c, excl));
      add("c b^q + b != 0", (field.mul(c, field.conj(b)) ^ b) != 0);
      break;
    }
    case Family::B: {
      const unsigned s = require(p.s_exp, "s");
      check_exponent(field, s, "s");
      if (!p.r.empty()) {
        if (p.r.size() != h - 1) throw std::invalid_argument("Family B: r needs n/2 - 1 entries");
        for (Elem r : p.r) {
          field.check(r);
          if (!field.in_half(r)) throw std::invalid_argument("Family B: r entries must lie in the half field");
        }
      }
      add("s odd", s % 2 == 1);
      add("n/2 odd", h % 2 == 1);
      add("gcd(s,n/2)=1", std::gcd(s, h) == 1);
      const Elem b = require(p.b, "b");
      const Elem c = require(p.c, "c");
      add("b not a cube", b != 0 && !field.is_kth_power(b, 3));
      add("c not in F_q", !field.in_half(c));
      break;
    }
    case Family::C: {
      const unsigned i = require(p.i, "i");
      check_exponent(field, i, "i");
      const Elem c = require(p.c, "c");
      const Elem s = require(p.s_elem, "s_elem");
      add("gcd(i,n/2)=1", std::gcd(i, h) == 1);
      add("s not in F_q", !field.in_half(s));
      add("P irreducible", family_c_irreducible(field, i, c));
      break;
    }
    case Family::D: {
      const unsigned i = require(p.i, "i");
      check_exponent(field, i, "i");
      const Elem c = require(p.c, "c");
      const Elem t = require(p.t, "t");
      add("gcd(i,n/2)=1", std::gcd(i, h) == 1);
      add("P root-free", !has_root(field, i, family_d_u(field, c, t), family_d_w(field, c, t)));
      break;
    }
    case Family::E: {
      const unsigned i = require(p.i, "i");
      const unsigned j = require(p.j, "j");
      check_exponent(field, i, "i");
      check_exponent(field, j, "j");
      if (j <= i) throw std::invalid_argument("Family E: j must exceed i");
      const Elem c = require(p.c, "c");
      add("n/2 odd", h % 2 == 1);
      add("j-i odd", (j - i) % 2 == 1);
      add("gcd(j-i,n/2)=1", std::gcd(j - i, h) == 1);
      add("c in F*^(q-1)", c != 0 && field.is_kth_power(c, q - 1));
      add("c not in F*^(3(q-1))", c != 0 && !is_power_class(field, c, u128{3} * (q - 1)));
      break;
    }
  }
  if (diagnostic) *diagnostic = diag;
  return out;
}

FamilyConstruction construct_family(const Field& field, const FamilyParams& p) {
  require_even(field, "family");
  if (p.n != field.degree()) throw std::invalid_argument("family: params.n does not match the field");
  const std::uint64_t q = q_of(field);
  const unsigned n = field.degree();
  VecFn B = bent_B(field);
  auto pw = [&](Elem x, u128 e) { return power(field, x, e); };

  switch (p.family) {
    case Family::A_FAUX:
    case Family::A_OPTIMAL: {
      const unsigned i = require(p.i, "i");
      check_exponent(field, i, "i");
      const Elem b = require(p.b, "b");
      const Elem c = require(p.c, "c");
      if (c == 0) throw std::invalid_argument("Family A: c must be nonzero");
      const u128 e = two_pow(2 * i) + two_pow(i);
      const Elem cp = field.frobenius(c, n - 1);
      const Elem cp_inv = field.inverse(cp);
      VecFn F = VecFn::tabulate(field, [&](Elem x) {
        return pw(x, e) ^ field.mul(b, pw(x, q + 1)) ^ field.mul(c, pw(x, e * q));
      });
      VecFn G = half_trace_of(field, [&](Elem x) { return field.mul(pw(x, e), cp_inv); });
      Isomorphism L = Isomorphism::scaled(field, field.mul(b, cp_inv));
      return {std::move(F), std::move(B), std::move(G), std::move(L), cp};
    }
    case Family::B: {
      const unsigned s = require(p.s_exp, "s");
      check_exponent(field, s, "s");
      const Elem b = require(p.b, "b");
      const Elem c = require(p.c, "c");
      const unsigned h = field.half_degree();
      if (!p.r.empty() && p.r.size() != h - 1) throw std::invalid_argument("Family B: r needs n/2 - 1 entries");
      const u128 e = two_pow(s) + 1;
      const Elem bq = field.conj(b);
      VecFn F = VecFn::tabulate(field, [&](Elem x) {
        Elem v = field.mul(b, pw(x, e)) ^ field.mul(bq, pw(x, e * q)) ^ field.mul(c, pw(x, q + 1));
        for (std::size_t k = 1; k <= p.r.size(); ++k)
          if (p.r[k - 1] != 0) v ^= field.mul(p.r[k - 1], pw(x, two_pow(static_cast<unsigned>(k)) * (q + 1)));
        return v;
      });
      VecFn G = half_trace_of(field, [&](Elem x) { return field.mul(b, pw(x, e)); });
      std::vector<Elem> lambda{c};
      lambda.insert(lambda.end(), p.r.begin(), p.r.end());
      const bool plain = std::all_of(p.r.begin(), p.r.end(), [](Elem r) { return r == 0; });
      Isomorphism L = Isomorphism::linearized(field, std::move(lambda), 1, plain ? IsoKind::SCALED : IsoKind::LINEARIZED);
      return {std::move(F), std::move(B), std::move(G), std::move(L), 1};
    }
    case Family::C: {
      const unsigned i = require(p.i, "i");
      check_exponent(field, i, "i");
      const Elem c = require(p.c, "c");
      const Elem s = require(p.s_elem, "s_elem");
      const u128 ei = two_pow(i);
      const Elem cq = field.conj(c);
      VecFn F = VecFn::tabulate(field, [&](Elem x) {
        return pw(x, ei + 1) ^ pw(x, q + 1) ^ field.mul(c, pw(x, ei * q + 1)) ^ field.mul(cq, pw(x, ei + q)) ^
               field.mul(s, pw(x, ei * (q + 1))) ^ pw(x, (ei + 1) * q);
      });
      VecFn G = half_trace_of(field, [&](Elem x) { return pw(x, ei + 1) ^ field.mul(c, pw(x, ei * q + 1)); });
      Isomorphism L = Isomorphism::frobenius_mix(field, s, i);
      return {std::move(F), std::move(B), std::move(G), std::move(L), 1};
    }
    case Family::D: {
      const unsigned i = require(p.i, "i");
      check_exponent(field, i, "i");
      const Elem c = require(p.c, "c");
      const Elem t = require(p.t, "t");
      const u128 ei = two_pow(i);
      VecFn G = half_trace_of(field, [&](Elem x) {
        return pw(x, ei + 1) ^ field.mul(c, pw(x, ei * q + 1)) ^ field.mul(t, pw(x, ei + q));
      });
      Isomorphism L = p.L ? *p.L : default_L(field);
      VecFn F = assemble(field, B, G, L);
      return {std::move(F), std::move(B), std::move(G), std::move(L), 1};
    }
    case Family::E: {
      const unsigned i = require(p.i, "i");
      const unsigned j = require(p.j, "j");
      check_exponent(field, i, "i");
      check_exponent(field, j, "j");
      const Elem c = require(p.c, "c");
      if (c == 0) throw std::invalid_argument("Family E: c must be nonzero");
      const Elem cp_inv = field.inverse(field.frobenius(c, n - 1));
      const u128 e = two_pow(j) + two_pow(i);
      VecFn G = half_trace_of(field, [&](Elem x) { return field.mul(pw(x, e), cp_inv); });
      Isomorphism L = p.L ? *p.L : default_L(field);
      VecFn F = assemble(field, B, G, L);
      return {std::move(F), std::move(B), std::move(G), std::move(L), 1};
    }
  }
  throw std::logic_error("construct_family: unknown family");
}

ApnCertificate build_family(const Field& field, const FamilyParams& params) {
  ApnCertificate cert;
  cert.params = params;
  cert.poly = field.reduction_poly();
  cert.hypothesis_report = check_hypotheses(field, params, &cert.diagnostic);
  const bool pass = cert.hypotheses_pass();
  const bool measure = pass || params.family == Family::D;
  if (measure) {
    FamilyConstruction built = construct_family(field, params);
    cert.measured_uniformity = differential_uniformity(built.F);
    cert.function_table = std::move(built.F);
    cert.L = std::move(built.L);
  }
  if (!pass) {
    cert.verdict = Verdict::HYPOTHESIS_FAIL;
  } else {
    cert.verdict = *cert.measured_uniformity == 2 ? Verdict::APN_VERIFIED : Verdict::NOT_APN;
  }
  if (params.family == Family::D) {
    const bool root_free = cert.hypothesis_report.back().passed;
    const bool apn = *cert.measured_uniformity == 2;
    if (root_free != apn)
      cert.diagnostic = root_free ? "counterexample: P root-free but F not APN"
                                  : "counterexample: F APN although P has a root";
  }
  return cert;
}

ApnCertificate build_family_a(const Field& field, unsigned i, std::optional<Elem> c, Elem b, Family variant) {
  if (variant != Family::A_FAUX && variant != Family::A_OPTIMAL)
    throw std::invalid_argument("build_family_a: variant must be A_FAUX or A_OPTIMAL");
  FamilyParams p;
  p.family = variant;
  p.n = field.degree();
  p.i = i;
  p.c = c;
  p.b = b;
  return build_family(field, p);
}

ApnCertificate build_family_b(const Field& field, unsigned s_exp, Elem b, Elem c, std::vector<Elem> r) {
  FamilyParams p;
  p.family = Family::B;
  p.n = field.degree();
  p.s_exp = s_exp;
  p.b = b;
  p.c = c;
  p.r = std::move(r);
  return build_family(field, p);
}

ApnCertificate build_family_c(const Field& field, unsigned i, Elem c, Elem s_elem) {
  FamilyParams p;
  p.family = Family::C;
  p.n = field.degree();
  p.i = i;
  p.c = c;
  p.s_elem = s_elem;
  return build_family(field, p);
}

ApnCertificate build_family_d(const Field& field, unsigned i, Elem c, Elem t, std::optional<Isomorphism> L) {
  FamilyParams p;
  p.family = Family::D;
  p.n = field.degree();
  p.i = i;
  p.c = c;
  p.t = t;
  p.L = std::move(L);
  return build_family(field, p);
}

ApnCertificate build_family_e(const Field& field, unsigned i, unsigned j, Elem c, std::optional<Isomorphism> L) {
  FamilyParams p;
  p.family = Family::E;
  p.n = field.degree();
  p.i = i;
  p.j = j;
  p.c = c;
  p.L = std::move(L);
  return build_family(field, p);
}

// --- parameter enumeration ----------------------------------------------------------

namespace {

std::optional<Elem> first_element(const Field& field, Elem start, const std::function<bool(Elem)>& ok) {
  for (std::uint64_t x = start; x < field.size(); ++x)
    if (ok(static_cast<Elem>(x))) return static_cast<Elem>(x);
  return std::nullopt;
}

bool e_coefficient_ok(const Field& field, Elem c) {
  const std::uint64_t q = q_of(field);
  return c != 0 && field.is_kth_power(c, q - 1) && !is_power_class(field, c, u128{3} * (q - 1));
}

}  // namespace

FamilyParams complete_params(const Field& field, FamilyParams p) {
  require_even(field, "family");
  p.n = field.degree();
  switch (p.family) {
    case Family::A_FAUX:
    case Family::A_OPTIMAL: {
      if (!p.i) p.i = 1;
      if (!p.c) {
        const auto adm = family_a_admissible_c(field, *p.i, p.family);
        if (!adm.empty()) p.c = adm.front();
      }
      if (!p.b) {
        const Elem c = p.c.value_or(0);
        p.b = first_element(field, 1, [&](Elem b) { return (field.mul(c, field.conj(b)) ^ b) != 0; }).value_or(1);
      }
      break;
    }
    case Family::B: {
      if (!p.s_exp) p.s_exp = 1;
      if (!p.b) p.b = first_element(field, 1, [&](Elem b) { return !field.is_kth_power(b, 3); });
      if (!p.c) p.c = first_element(field, 1, [&](Elem c) { return !field.in_half(c); });
      break;
    }
    case Family::C: {
      if (!p.i) p.i = 1;
      if (!p.s_elem) p.s_elem = field.find_omega();
      if (!p.c) p.c = first_element(field, 0, [&](Elem c) { return family_c_irreducible(field, *p.i, c); });
      break;
    }
    case Family::D: {
      if (!p.i) p.i = 1;
      if (!p.t) p.t = 0;
      if (!p.c)
        p.c = first_element(field, 0, [&](Elem c) {
          return !has_root(field, *p.i, family_d_u(field, c, *p.t), family_d_w(field, c, *p.t));
        });
      break;
    }
    case Family::E: {
      if (!p.i) p.i = 0;
      if (!p.j) p.j = *p.i + 1;
      if (!p.c) p.c = first_element(field, 1, [&](Elem c) { return e_coefficient_ok(field, c); });
      break;
    }
  }
  return p;
}

SearchResult search_family(const Field& field, Family family, const SearchOptions& opt) {
  require_even(field, "search_family");
  require_within_cap(field.degree(), kDefaultExhaustiveCap, "search_family");
  const unsigned n = field.degree();
  const unsigned h = field.half_degree();
  SearchResult result;
  std::vector<FamilyParams> candidates;
  auto full = [&] { return candidates.size() >= opt.budget; };
  auto base = [&] {
    FamilyParams p;
    p.family = family;
    p.n = n;
    return p;
  };
  auto exponents = [&](std::optional<unsigned> only, unsigned lo) {
    std::vector<unsigned> v;
    if (only) {
      v.push_back(*only);
    } else {
      for (unsigned e = lo; e < n; ++e) v.push_back(e);
    }
    return v;
  };
  auto passes = [&](const FamilyParams& p) {
    const auto report = check_hypotheses(field, p);
    return std::all_of(report.begin(), report.end(), [](const Hypothesis& x) { return x.passed; });
  };

  switch (family) {
    case Family::A_FAUX:
    case Family::A_OPTIMAL: {
      for (unsigned i : exponents(opt.i, 1)) {
        if (full()) break;
        const auto adm = family_a_admissible_c(field, i, family);
        if (adm.empty()) {
          result.diagnostics.push_back("i=" + std::to_string(i) + ": " + kVacuous);
          continue;
        }
        FamilyParams p = base();
        p.i = i;
        p.c = adm.front();
        p.b = 1;
        std::string failing;
        for (const auto& hyp : check_hypotheses(field, p))
          if (!hyp.passed && hyp.name.rfind("c", 0) != 0) failing = hyp.name;
        if (!failing.empty()) {
          result.diagnostics.push_back("i=" + std::to_string(i) + ": hypothesis " + failing + " fails");
          continue;
        }
        for (Elem c : adm) {
          if (full()) break;
          p.c = c;
          p.b = first_element(field, 1, [&](Elem b) { return (field.mul(c, field.conj(b)) ^ b) != 0; });
          if (p.b && passes(p)) candidates.push_back(p);
        }
      }
      break;
    }
    case Family::B: {
      if (h % 2 == 0) {
        result.diagnostics.push_back("n/2 even: Family B requires n/2 odd");
        break;
      }
      for (unsigned s : exponents(opt.i, 1)) {
        if (full()) break;
        if (s % 2 == 0 || std::gcd(s, h) != 1) continue;
        FamilyParams p = base();
        p.s_exp = s;
        for (std::uint64_t b = 1; b < field.size() && !full(); ++b) {
          if (field.is_kth_power(static_cast<Elem>(b), 3)) continue;
          p.b = static_cast<Elem>(b);
          for (std::uint64_t c = 1; c < field.size() && !full(); ++c) {
            if (field.in_half(static_cast<Elem>(c))) continue;
            p.c = static_cast<Elem>(c);
            candidates.push_back(p);
          }
        }
      }
      break;
    }
    case Family::C: {
      const Elem s = field.find_omega();
      const std::vector<unsigned> is = opt.i ? std::vector<unsigned>{*opt.i} : std::vector<unsigned>{1, 2};
      for (unsigned i : is) {
        if (full()) break;
        if (i >= n || std::gcd(i, h) != 1) {
          result.diagnostics.push_back("i=" + std::to_string(i) + ": hypothesis gcd(i,n/2)=1 fails");
          continue;
        }
        FamilyParams p = base();
        p.i = i;
        p.s_elem = s;
        for (std::uint64_t c = 0; c < field.size() && !full(); ++c) {
          if (!family_c_irreducible(field, i, static_cast<Elem>(c))) continue;
          p.c = static_cast<Elem>(c);
          candidates.push_back(p);
        }
      }
      break;
    }
    case Family::D: {
      for (unsigned i : exponents(opt.i, 1)) {
        if (full()) break;
        if (std::gcd(i, h) != 1) continue;
        FamilyParams p = base();
        p.i = i;
        for (std::uint64_t t = 0; t < field.size() && !full(); ++t) {
          for (std::uint64_t c = 0; c < field.size() && !full(); ++c) {
            const Elem ce = static_cast<Elem>(c);
            const Elem te = static_cast<Elem>(t);
            if (has_root(field, i, family_d_u(field, ce, te), family_d_w(field, ce, te))) continue;
            p.c = ce;
            p.t = te;
            candidates.push_back(p);
          }
        }
      }
      break;
    }
    case Family::E: {
      if (h % 2 == 0) {
        result.diagnostics.push_back("n/2 even: Family E requires n/2 odd");
        break;
      }
      for (unsigned i : exponents(opt.i, 0)) {
        if (full()) break;
        for (unsigned j = i + 1; j < n && !full(); ++j) {
          if (opt.j && j != *opt.j) continue;
          if ((j - i) % 2 == 0 || std::gcd(j - i, h) != 1) continue;
          FamilyParams p = base();
          p.i = i;
          p.j = j;
          for (std::uint64_t c = 1; c < field.size() && !full(); ++c) {
            if (!e_coefficient_ok(field, static_cast<Elem>(c))) continue;
            p.c = static_cast<Elem>(c);
            candidates.push_back(p);
          }
        }
      }
      break;
    }
  }

  result.candidates = candidates.size();
  std::vector<ApnCertificate> built(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t k, unsigned) { built[k] = build_family(field, candidates[k]); });
  for (std::size_t k = 0; k < built.size(); ++k) {
    if (built[k].verdict == Verdict::APN_VERIFIED) {
      result.certificates.push_back(std::move(built[k]));
    } else {
      result.diagnostics.push_back("candidate " + std::to_string(k) + ": " + to_string(built[k].verdict) +
                                   (built[k].diagnostic.empty() ? "" : " (" + built[k].diagnostic + ")"));
    }
  }
  return result;
}

}  // namespace apnlab
