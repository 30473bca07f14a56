#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "apnlab/poly.hpp"
#include "apnlab/runtime.hpp"
#include "oracle.hpp"

using namespace apnlab;

namespace {

std::shared_ptr<const Field> field(unsigned n) { return std::make_shared<const Field>(n); }

// All monic polynomials of degree `deg` over GF(2^n) as coefficient vectors.
std::vector<std::vector<Elem>> monics(unsigned n, unsigned deg) {
  const std::uint64_t q = std::uint64_t{1} << n;
  std::uint64_t total = 1;
  for (unsigned k = 0; k < deg; ++k) total *= q;
  std::vector<std::vector<Elem>> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Elem> c(deg + 1, 1);
    std::uint64_t v = code;
    for (unsigned k = 0; k < deg; ++k, v /= q) c[k] = static_cast<Elem>(v % q);
    out.push_back(c);
  }
  return out;
}

std::vector<Elem> mul_coeffs(const oracle::Gf& g, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] ^= g.mul(a[i], b[j]);
  return c;
}

// Remainder of a by a monic divisor, trimmed.
std::vector<Elem> remainder(const oracle::Gf& g, std::vector<Elem> a, const std::vector<Elem>& m) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int k = static_cast<int>(a.size()) - 1; k >= dm; --k) {
    const Elem top = a[k];
    if (top)
      for (int j = 0; j <= dm; ++j) a[k - dm + j] ^= g.mul(top, m[j]);
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Monic polynomials of degree `deg` over GF(2^n) that are a product of two
// monic factors of positive degree.
std::set<std::vector<Elem>> reducible_monics(unsigned n, unsigned deg) {
  const oracle::Gf g{n, Field(n).reduction_poly()};
  std::set<std::vector<Elem>> out;
  for (unsigned d1 = 1; d1 <= deg / 2; ++d1)
    for (const auto& a : monics(n, d1))
      for (const auto& b : monics(n, deg - d1)) out.insert(mul_coeffs(g, a, b));
  return out;
}

}  // namespace

TEST(FieldPoly, NormalizesAndParses) {
  auto f = field(4);
  const FieldPoly p(f, {1, 2, 0, 0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p.leading(), 2u);
  EXPECT_TRUE(FieldPoly(f, {0, 0}).is_zero());
  EXPECT_EQ(FieldPoly::zero(f).degree(), -1);
  EXPECT_EQ(FieldPoly::parse(f, "1, 0x2,f"), FieldPoly(f, {1, 2, 15}));
  EXPECT_EQ(FieldPoly::parse(f, "1,2,f").to_string(), "1,2,f");
  EXPECT_THROW(FieldPoly::parse(f, "1,,2"), std::invalid_argument);
  EXPECT_THROW(FieldPoly::parse(f, "10"), std::invalid_argument);
  EXPECT_THROW(FieldPoly(f, {16}), std::invalid_argument);
}

TEST(FieldPoly, EvaluationMatchesOracle) {
  auto f = field(6);
  const oracle::Gf g{6, f->reduction_poly()};
  const FieldPoly p(f, {5, 0, 17, 1, 63});
  for (Elem x = 0; x < 64; ++x) {
    const Elem expect = 5 ^ g.mul(17, g.pow(x, 2)) ^ g.pow(x, 3) ^ g.mul(63, g.pow(x, 4));
    EXPECT_EQ(p(x), expect);
  }
}

TEST(FieldPoly, DivmodReconstructs) {
  auto f = field(4);
  const FieldPoly a(f, {3, 7, 0, 9, 1, 12});
  for (const auto& c : monics(4, 2)) {
    FieldPoly b(f, c);
    b = b * FieldPoly(f, {5});
    const auto [qq, r] = FieldPoly::divmod(a, b);
    EXPECT_EQ(qq * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
  EXPECT_THROW(FieldPoly::divmod(a, FieldPoly::zero(f)), std::domain_error);
  const auto [qq, r] = FieldPoly::divmod(FieldPoly(f, {1}), a);
  EXPECT_TRUE(qq.is_zero());
  EXPECT_EQ(r, FieldPoly(f, {1}));
}

TEST(FieldPoly, MismatchedFieldsThrow) {
  const FieldPoly a(field(4), {1, 1});
  const FieldPoly b(field(6), {1, 1});
  EXPECT_THROW((void)(a + b), std::invalid_argument);
  EXPECT_THROW((void)(a * b), std::invalid_argument);
}

TEST(FieldPoly, DerivativeDropsEvenTerms) {
  auto f = field(3);
  const FieldPoly p(f, {1, 2, 3, 4, 5});
  EXPECT_EQ(p.derivative(), FieldPoly(f, {2, 0, 4}));
}

TEST(PolyGcd, Examples) {
  auto f2 = field(1);
  EXPECT_EQ(poly_gcd(FieldPoly::x_pow_minus_one(f2, 4), FieldPoly::x_pow_minus_one(f2, 6)),
            FieldPoly::x_pow_minus_one(f2, 2));
  EXPECT_EQ(poly_gcd(FieldPoly::x_pow_minus_one(f2, 3), FieldPoly::x_pow_minus_one(f2, 5)),
            FieldPoly::x_pow_minus_one(f2, 1));
  auto f = field(4);
  const FieldPoly p(f, {3, 9, 7});
  EXPECT_EQ(poly_gcd(p, FieldPoly::zero(f)), p.monic());
  EXPECT_EQ(poly_gcd(p, FieldPoly::zero(f)).leading(), 1u);
  EXPECT_THROW(poly_gcd(FieldPoly::zero(f), FieldPoly::zero(f)), std::invalid_argument);
}

TEST(PolyGcd, CyclotomicGcdAndDivisibility) {
  for (unsigned n : {1u, 2u}) {
    auto f = field(n);
    for (unsigned s = 1; s <= 64; ++s)
      for (unsigned t = 1; t <= 64; ++t) {
        const FieldPoly a = FieldPoly::x_pow_minus_one(f, s);
        const FieldPoly b = FieldPoly::x_pow_minus_one(f, t);
        ASSERT_EQ(poly_gcd(a, b), FieldPoly::x_pow_minus_one(f, std::gcd(s, t))) << s << "," << t;
        ASSERT_EQ(FieldPoly::divmod(b, a).second.is_zero(), t % s == 0) << s << "," << t;
      }
  }
}

TEST(Squarefree, Examples) {
  auto f2 = field(1);
  EXPECT_FALSE(is_squarefree(FieldPoly(f2, {1, 0, 1})));
  EXPECT_TRUE(is_squarefree(FieldPoly(f2, {1, 1, 0, 1})));
  for (unsigned n : {4u, 6u, 8u}) {
    auto f = field(n);
    EXPECT_TRUE(is_squarefree(FieldPoly::x_pow_minus_one(f, (1u << (n / 2)) + 1)));
  }
  EXPECT_THROW(is_squarefree(FieldPoly::zero(f2)), std::invalid_argument);
}

TEST(Squarefree, MatchesRepeatedFactorSearch) {
  // deg <= 4: a repeated root exists iff h^2 | p for some monic h of degree 1 or 2
  for (unsigned n : {1u, 2u, 3u}) {
    auto f = field(n);
    const oracle::Gf g{n, f->reduction_poly()};
    std::vector<std::vector<Elem>> squares;
    for (unsigned d = 1; d <= 2; ++d)
      for (const auto& h : monics(n, d)) squares.push_back(mul_coeffs(g, h, h));
    for (unsigned deg = 1; deg <= 4; ++deg)
      for (const auto& c : monics(n, deg)) {
        bool repeated = false;
        for (const auto& sq : squares)
          if (sq.size() <= c.size() && remainder(g, c, sq).empty()) repeated = true;
        ASSERT_EQ(is_squarefree(FieldPoly(f, c)), !repeated) << FieldPoly(f, c).to_string();
      }
  }
}

TEST(Roots, Examples) {
  auto f4 = field(2);
  EXPECT_EQ(has_root_in_field(FieldPoly(f4, {0, 1, 1})), std::optional<Elem>(0));
  auto f2 = field(1);
  EXPECT_EQ(has_root_in_field(FieldPoly(f2, {1, 1, 1})), std::nullopt);
  EXPECT_THROW(has_root_in_field(FieldPoly(f2, {1})), std::invalid_argument);
}

TEST(Roots, CubicFamilyMatchesBruteForce) {
  auto f = field(6);
  const oracle::Gf g{6, f->reduction_poly()};
  int rootless = 0;
  for (Elem c = 0; c < 64; ++c) {
    const Elem cq = g.pow(c, 8);
    const FieldPoly p(f, {1, cq, c, 1});
    std::optional<Elem> first;
    for (Elem x = 0; x < 64 && !first; ++x)
      if ((g.pow(x, 3) ^ g.mul(c, g.pow(x, 2)) ^ g.mul(cq, x) ^ 1) == 0) first = x;
    EXPECT_EQ(has_root_in_field(p), first) << c;
    rootless += !first;
  }
  EXPECT_GT(rootless, 0);
}

TEST(Roots, ExtensionCounts) {
  auto f2 = field(1);
  const FieldPoly p(f2, {1, 1, 1});
  EXPECT_EQ(count_roots_in_extension(p, 1), 0u);
  EXPECT_EQ(count_roots_in_extension(p, 2), 2u);
  EXPECT_EQ(count_roots_in_extension(p, 3), 0u);
  EXPECT_EQ(count_roots_in_extension(p, 4), 2u);
  EXPECT_THROW(count_roots_in_extension(p, 0), std::invalid_argument);
  EXPECT_THROW(count_roots_in_extension(FieldPoly(field(8), {1, 1, 1}), 3), CapError);
}

TEST(IrreducibleByRoots, Examples) {
  for (unsigned k = 1; k <= 4; ++k) EXPECT_FALSE(is_irreducible_by_roots(FieldPoly(field(2 * k), {1, 1, 1})));
  EXPECT_TRUE(is_irreducible_by_roots(FieldPoly(field(1), {1, 1, 1})));
  EXPECT_THROW(is_irreducible_by_roots(FieldPoly(field(1), {1, 1})), std::invalid_argument);
  EXPECT_THROW(is_irreducible_by_roots(FieldPoly(field(1), {1, 0, 0, 0, 0, 0, 1})), std::invalid_argument);
  // degree 3: irreducible iff root-free
  auto f = field(6);
  for (Elem c = 0; c < 64; ++c) {
    const FieldPoly p(f, {1, f->pow(c, 8), c, 1});
    EXPECT_EQ(is_irreducible_by_roots(p), !has_root_in_field(p).has_value());
  }
}

TEST(IrreducibleByRoots, MatchesTrialDivision) {
  for (unsigned n : {1u, 2u}) {
    for (unsigned deg = 2; deg <= 5; ++deg) {
      const auto reducible = reducible_monics(n, deg);
      auto f = field(n);
      for (const auto& c : monics(n, deg))
        ASSERT_EQ(is_irreducible_by_roots(FieldPoly(f, c)), !reducible.count(c)) << n << ":" << FieldPoly(f, c).to_string();
    }
  }
}

TEST(IrreducibleByRoots, DegreeFiveOverGf16) {
  // sampled: every 97th monic quintic over GF(16)
  const auto reducible = reducible_monics(4, 5);
  auto f = field(4);
  const auto all = monics(4, 5);
  std::size_t irreducible = 0;
  for (std::size_t k = 0; k < all.size(); k += 97) {
    const bool expect = !reducible.count(all[k]);
    ASSERT_EQ(is_irreducible_by_roots(FieldPoly(f, all[k])), expect);
    irreducible += expect;
  }
  EXPECT_GT(irreducible, 0u);
}

TEST(Splitting, Examples) {
  auto r = coprime_degree_irreducibility_check(0xb, 2);
  EXPECT_TRUE(r.matches);
  EXPECT_EQ(r.d, 1u);
  EXPECT_EQ(r.observed[0], 0u);
  EXPECT_EQ(r.observed[1], 0u);
  EXPECT_EQ(r.observed[2], 3u);

  r = coprime_degree_irreducibility_check(0x7, 2);
  EXPECT_TRUE(r.matches);
  EXPECT_EQ(r.d, 2u);
  EXPECT_EQ(r.observed[0], 2u);

  r = coprime_degree_irreducibility_check(0x13, 2);
  EXPECT_TRUE(r.matches);
  EXPECT_EQ(r.d, 2u);
  EXPECT_EQ(r.observed[0], 0u);
  EXPECT_EQ(r.observed[1], 4u);

  EXPECT_THROW(coprime_degree_irreducibility_check(0x5, 2), std::invalid_argument);
  EXPECT_THROW(coprime_degree_irreducibility_check(0x25, 5), CapError);
}

TEST(Splitting, AllSmallIrreducibles) {
  for (gf2::Poly p = 2; p < 64; ++p) {
    if (!oracle::irreducible_gf2(p)) continue;
    const unsigned deg = static_cast<unsigned>(gf2::degree(p));
    for (unsigned m = 1; deg * m <= 12; ++m) EXPECT_TRUE(coprime_degree_irreducibility_check(p, m).matches) << p << " " << m;
  }
}
