#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "apnlab/runtime.hpp"
#include "apnlab/spectrum.hpp"
#include "oracle.hpp"

using namespace apnlab;

namespace {

BoolFn random_bool(unsigned n, std::mt19937& rng) {
  std::vector<std::uint8_t> t(std::size_t{1} << n);
  for (auto& b : t) b = rng() & 1;
  return {n, std::move(t)};
}

std::vector<std::uint32_t> table_of(const VecFn& F) { return {F.table.begin(), F.table.end()}; }

}  // namespace

TEST(Tables, Validation) {
  EXPECT_THROW(BoolFn(3, std::vector<std::uint8_t>(7)), std::invalid_argument);
  EXPECT_THROW(BoolFn(2, {0, 1, 2, 0}), std::invalid_argument);
  EXPECT_THROW(VecFn(2, 2, {0, 1, 4, 0}), std::invalid_argument);
  EXPECT_THROW(VecFn(2, 2, {0, 1, 2}), std::invalid_argument);
  const Field f(4);
  EXPECT_EQ(VecFn::power(f, 0).table[0], 1u);
  EXPECT_EQ(VecFn::power(f, 0).table[5], 1u);
  EXPECT_EQ(BoolFn::monomial_trace(f, 1, 1).table, BoolFn::monomial_trace(f, 1, 16).table);
}

TEST(Walsh, Examples) {
  const Field f2(2);
  const WalshSpectrum zero = walsh_naive(f2, BoolFn::constant(2, false));
  EXPECT_EQ(zero.values, (std::vector<std::int64_t>{4, 0, 0, 0}));
  const WalshSpectrum tr = walsh_naive(f2, BoolFn::monomial_trace(f2, 1, 1));
  EXPECT_EQ(tr.values, (std::vector<std::int64_t>{0, 4, 0, 0}));
  const Field f5(5);
  const WalshSpectrum one = walsh_fast(f5, BoolFn::constant(5, true));
  EXPECT_EQ(one[0], -32);
  for (std::size_t u = 1; u < 32; ++u) EXPECT_EQ(one[u], 0);
}

TEST(Walsh, FrozenSpectra) {
  // computed by an independent implementation of the definition
  const Field f4(4);
  const std::vector<std::int64_t> cube = {-8, 8, 0, 0, 0, 0, 8, 8, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(walsh_naive(f4, BoolFn::monomial_trace(f4, 1, 3)).values, cube);
  EXPECT_EQ(walsh_fast(f4, BoolFn::monomial_trace(f4, 1, 3)).values, cube);
  const Field f6(6);
  const WalshSpectrum s = walsh_fast(f6, BoolFn::monomial_trace(f6, 1, 9));
  EXPECT_EQ(s[0], 64);
  for (std::size_t u = 1; u < 64; ++u) EXPECT_EQ(s[u], 0);
}

TEST(Walsh, AllMethodsAgreeWithDefinition) {
  std::mt19937 rng(11);
  for (unsigned n = 2; n <= 8; ++n) {
    const Field f(n);
    const oracle::Gf g{n, f.reduction_poly()};
    const CharacterTable ct(f);
    for (int rep = 0; rep < 4; ++rep) {
      const BoolFn fn = random_bool(n, rng);
      const auto expect = oracle::walsh(g, fn.table);
      ASSERT_EQ(walsh_naive(f, fn).values, expect) << n;
      ASSERT_EQ(walsh_fast(f, fn).values, expect) << n;
      ASSERT_EQ(ct.walsh(fn).values, expect) << n;
    }
  }
}

TEST(Walsh, FastMatchesNaiveRandom) {
  std::mt19937 rng(12);
  for (unsigned n = 9; n <= 12; ++n) {
    const Field f(n);
    for (int rep = 0; rep < 3; ++rep) {
      const BoolFn fn = random_bool(n, rng);
      const WalshSpectrum s = walsh_fast(f, fn);
      ASSERT_EQ(s, walsh_naive(f, fn)) << n;
      ASSERT_EQ(s.energy(), std::int64_t{1} << (2 * n));
    }
  }
}

TEST(Walsh, ParsevalAndParity) {
  std::mt19937 rng(13);
  const Field f(10);
  for (int rep = 0; rep < 5; ++rep) {
    const WalshSpectrum s = walsh_fast(f, random_bool(10, rng));
    EXPECT_EQ(s.energy(), std::int64_t{1} << 20);
    for (auto v : s.values) {
      EXPECT_EQ(v % 2, 0);
      EXPECT_LE(std::abs(v), 1024);
    }
  }
}

TEST(Walsh, CustomPolynomialField) {
  std::mt19937 rng(14);
  const Field f(8, 0x11d);
  const oracle::Gf g{8, 0x11d};
  const BoolFn fn = random_bool(8, rng);
  EXPECT_EQ(walsh_fast(f, fn).values, oracle::walsh(g, fn.table));
}

TEST(Walsh, Caps) {
  const Field f(4);
  EXPECT_THROW(walsh_fast(f, BoolFn::constant(5, false)), std::invalid_argument);
  EXPECT_THROW(CharacterTable(Field(15)), CapError);
}

TEST(ClassWalsh, EqualsFastForEveryExponent) {
  for (unsigned n = 2; n <= 8; ++n) {
    const Field f(n);
    const Elem a = f.primitive();
    for (std::uint64_t i = 1; i < f.size(); ++i) {
      const ClassWalsh cw = walsh_monomial_by_classes(f, a, i);
      ASSERT_EQ(cw.spectrum, walsh_fast(f, BoolFn::monomial_trace(f, a, i))) << n << " " << i;
      ASSERT_EQ(cw.d, std::gcd(i, f.group_order()));
      ASSERT_EQ(cw.classes, f.group_order() / cw.d);
      ASSERT_EQ(cw.evaluations, cw.classes + 1);
    }
  }
}

TEST(ClassWalsh, ConstantOnCosets) {
  const Field f(4);
  const ClassDecomposition cd = f.class_decomposition(3);
  const WalshSpectrum s = walsh_fast(f, BoolFn::monomial_trace(f, f.primitive(), 3));
  for (Elem r : cd.representatives)
    for (Elem z : cd.kernel) EXPECT_EQ(s[f.mul(r, z)], s[r]);
  const ClassWalsh cw = walsh_monomial_by_classes(f, f.primitive(), 3);
  EXPECT_EQ(cw.classes, 5u);
  EXPECT_EQ(cw.spectrum, s);
}

TEST(ClassWalsh, CensusAtN8) {
  const Field f(8);
  const ClassWalsh cw = walsh_monomial_by_classes(f, 1, 15);
  EXPECT_EQ(cw.d, 15u);
  EXPECT_EQ(cw.classes, 17u);
  EXPECT_EQ(cw.evaluations, 18u);
  const ClassWalsh single = walsh_monomial_by_classes(f, 1, 7);
  EXPECT_EQ(single.d, 1u);
  EXPECT_EQ(single.evaluations, 256u);
  EXPECT_EQ(single.spectrum, walsh_fast(f, BoolFn::monomial_trace(f, 1, 7)));
  EXPECT_THROW(walsh_monomial_by_classes(f, 0, 3), std::invalid_argument);
}

TEST(ClassWalsh, ProbeAgreesWithBentness) {
  for (unsigned n : {4u, 6u, 8u}) {
    const Field f(n);
    const ClassProber prober(f);
    for (std::uint64_t i = 1; i < f.group_order(); ++i) {
      const WalshSpectrum s = walsh_fast(f, BoolFn::monomial_trace(f, 1, i));
      const ClassBentProbe p = prober.probe(1, i);
      ASSERT_EQ(p.bent, is_bent(s, n)) << n << " " << i;
      if (p.bent) ASSERT_EQ(p.chi_zero, s[0]);
      ASSERT_EQ(p.bent, probe_bent_by_classes(f, 1, i).bent);
    }
  }
}

TEST(Bent, Examples) {
  const Field f8(8);
  const BoolFn tr = BoolFn::monomial_trace(f8, 1, 1);
  EXPECT_TRUE(is_balanced(f8, tr));
  EXPECT_FALSE(is_bent(f8, tr));
  EXPECT_FALSE(is_balanced(f8, BoolFn::constant(8, false)));
  EXPECT_TRUE(is_bent(f8, BoolFn::monomial_trace(f8, 1, 15)));
  EXPECT_THROW(is_bent(Field(5), BoolFn::constant(5, false)), std::invalid_argument);
}

TEST(Bent, InvertibleExponentsGiveBalancedFunctions) {
  for (unsigned n : {4u, 6u, 8u}) {
    const Field f(n);
    for (std::uint64_t i = 1; i < f.group_order(); ++i) {
      if (std::gcd(i, f.group_order()) != 1) continue;
      const BoolFn fn = BoolFn::monomial_trace(f, 1, i);
      EXPECT_TRUE(is_balanced(f, fn));
      EXPECT_FALSE(is_bent(f, fn));
    }
  }
}

TEST(Bent, EquivalenceUnderScaling) {
  const Field f4(4);
  EXPECT_TRUE(bent_monomial_equivalence_check(f4, 1, 3));
  for (Elem b = 1; b < 16; ++b) EXPECT_TRUE(bent_monomial_equivalence_check(f4, b, 3)) << b;
  const Field f6(6);
  EXPECT_TRUE(bent_monomial_equivalence_check(f6, f6.primitive(), 5));
  EXPECT_THROW(bent_monomial_equivalence_check(f6, 0, 5), std::invalid_argument);
}

TEST(Bent, SignRule) {
  const Field f8(8);
  const BentSign s = bent_sign_check(f8, 1, 15);
  EXPECT_EQ(s.sign, Sign::PLUS);
  EXPECT_EQ(s.gcd_plus, 1u);
  EXPECT_EQ(s.gcd_minus, 15u);
  EXPECT_TRUE(s.consistent);
  EXPECT_THROW(bent_sign_check(f8, 1, 1), std::invalid_argument);
  for (std::uint64_t j = 0; j < 16; ++j) EXPECT_TRUE(bent_sign_check(f8, 1, 15 * (j + 1)).consistent) << j;
  EXPECT_FALSE(bent_sign_from_chi_zero(8, -16, 15).consistent);
  EXPECT_THROW(bent_sign_from_chi_zero(8, 8, 15), std::invalid_argument);
}

TEST(Differential, Examples) {
  for (unsigned n = 2; n <= 8; ++n) {
    const Field f(n);
    const VecFn sq = VecFn::power(f, 2);
    EXPECT_EQ(differential_uniformity(sq), 1u << n);
    EXPECT_FALSE(is_apn(sq));
  }
  EXPECT_TRUE(is_apn(VecFn::power(Field(5), 3)));
  EXPECT_TRUE(is_apn(VecFn::power(Field(6), 3)));
  EXPECT_EQ(differential_uniformity(VecFn::power(Field(6), 3)), 2u);
}

TEST(Differential, FrozenHistograms) {
  using H = std::map<std::uint32_t, std::uint64_t>;
  EXPECT_EQ(differential_spectrum(VecFn::power(Field(6), 5)).histogram, (H{{0, 3024}, {4, 1008}}));
  EXPECT_EQ(differential_spectrum(VecFn::power(Field(6), 3)).histogram, (H{{0, 2016}, {2, 2016}}));
  EXPECT_EQ(differential_spectrum(VecFn::power(Field(4), 14)).histogram, (H{{0, 135}, {2, 90}, {4, 15}}));
}

TEST(Differential, MatchesOracleAndCountsAreEven) {
  std::mt19937 rng(21);
  for (unsigned n = 2; n <= 8; ++n) {
    std::vector<Elem> t(std::size_t{1} << n);
    for (auto& v : t) v = rng() & ((1u << n) - 1);
    const VecFn F(n, n, t);
    const DifferentialSpectrum ds = differential_spectrum(F);
    EXPECT_EQ(ds.uniformity, oracle::uniformity(table_of(F), n));
    std::uint64_t pairs = 0, solutions = 0;
    for (auto [count, freq] : ds.histogram) {
      EXPECT_EQ(count % 2, 0u);
      pairs += freq;
      solutions += count * freq;
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    EXPECT_EQ(pairs, (size - 1) * size);
    EXPECT_EQ(solutions, (size - 1) * size);
    EXPECT_EQ(is_apn(F), ds.uniformity <= 2);
  }
}

TEST(Differential, IndependentOfWorkerCount) {
  const VecFn F = VecFn::power(Field(10), 7);
  set_worker_count(1);
  const auto one = differential_spectrum(F).histogram;
  set_worker_count(4);
  const auto four = differential_spectrum(F).histogram;
  set_worker_count(0);
  EXPECT_EQ(one, four);
}

TEST(Differential, Preconditions) {
  EXPECT_THROW(is_apn(VecFn(3, 2, std::vector<Elem>(8))), std::invalid_argument);
  EXPECT_THROW(differential_spectrum(VecFn(17, 1, std::vector<Elem>(std::size_t{1} << 17))), CapError);
}

TEST(DerivativeBalance, QuadraticNorm) {
  for (unsigned n : {4u, 6u, 8u}) {
    const Field f(n);
    const VecFn B = VecFn::power(f, (std::uint64_t{1} << (n / 2)) + 1);
    EXPECT_TRUE(derivative_balance_check(f, B));
  }
  const Field f6(6);
  EXPECT_FALSE(derivative_balance_check(f6, VecFn(6, 6, std::vector<Elem>(64, 0))));
  EXPECT_FALSE(derivative_balance_check(f6, VecFn::power(f6, 3)));
  EXPECT_THROW(derivative_balance_check(Field(5), VecFn::power(Field(5), 3)), std::invalid_argument);
}

TEST(DerivativeBalance, LevelSetsAreAffineCopiesOfHalfField) {
  const Field f(4);
  const std::uint64_t q = 4;
  const auto half = f.half_elements();
  for (Elem a = 1; a < 16; ++a) {
    const Elem norm = f.pow(a, q + 1);
    for (Elem c : half) {
      std::set<Elem> solutions;
      for (Elem x = 0; x < 16; ++x)
        if ((f.pow(x, q + 1) ^ f.pow(x ^ a, q + 1)) == c) solutions.insert(x);
      // a w with T(w) = 1 + c / a^(q+1) is one solution; the rest is a (w + F_q)
      const Elem target = 1 ^ f.div(c, norm);
      Elem w = 0;
      while (f.rel_trace_half(w) != target) ++w;
      std::set<Elem> expected;
      for (Elem X : half) expected.insert(f.mul(a, X ^ w));
      ASSERT_EQ(solutions, expected) << a << " " << c;
    }
  }
}

TEST(Audit, Examples) {
  const Field f5(5);
  const SboxReport cube = audit_sbox(VecFn::power(f5, 3), "x^3");
  EXPECT_TRUE(cube.apn);
  EXPECT_EQ(cube.differential_uniformity, 2u);
  EXPECT_EQ(cube.nonlinearity, 12);
  EXPECT_TRUE(cube.balanced);
  EXPECT_FALSE(cube.bent);
  EXPECT_EQ(cube.histogram, (std::map<std::uint32_t, std::uint64_t>{{0, 496}, {2, 496}}));

  std::vector<Elem> id(64);
  std::iota(id.begin(), id.end(), 0);
  const SboxReport ident = audit_sbox(VecFn(6, 6, id), "identity");
  EXPECT_EQ(ident.differential_uniformity, 64u);
  EXPECT_FALSE(ident.apn);
  EXPECT_TRUE(ident.balanced);
  EXPECT_EQ(ident.nonlinearity, 0);

  // a single bent component makes a (4,1)-function bent
  const Field f4(4);
  std::vector<Elem> t(16);
  const BoolFn b = BoolFn::monomial_trace(f4, f4.primitive(), 3);
  for (Elem x = 0; x < 16; ++x) t[x] = b(x);
  const SboxReport r = audit_sbox(VecFn(4, 1, t), "bent");
  EXPECT_EQ(r.bent, is_bent(f4, b));
  EXPECT_FALSE(r.apn);
}
