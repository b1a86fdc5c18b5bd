#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smallval/polyz.hpp"

using namespace smallval;
using namespace smallval::polyz;

namespace {

IntPolynomial P(std::initializer_list<long> c) { return IntPolynomial(c); }

} // namespace

TEST(DividedDerivative, Examples) {
  EXPECT_EQ(divided_derivative(IntPolynomial::monomial(1, 5), 2), IntPolynomial::monomial(10, 3));
  EXPECT_EQ(divided_derivative(P({5, 3, 2}), 1), P({3, 4}));
  IntPolynomial t4 = IntPolynomial::monomial(1, 4);
  IntPolynomial lhs = divided_derivative(divided_derivative(t4, 1), 2);
  EXPECT_EQ(lhs, P({0, 12}));
  EXPECT_EQ(lhs, Int(3) * divided_derivative(t4, 3));
  EXPECT_TRUE(divided_derivative(P({1, 2}), 2).is_zero());
}

TEST(DividedDerivative, CompositionIdentity) {
  Rng rng(11);
  for (int iter = 0; iter < 60; ++iter) {
    IntPolynomial p = oracle::random_poly(rng, random_long(rng, 0, 50), 1000);
    size_t j = static_cast<size_t>(random_long(rng, 0, 12));
    size_t k = static_cast<size_t>(random_long(rng, 0, 12));
    EXPECT_EQ(divided_derivative(divided_derivative(p, j), k),
              binomial(j + k, j) * divided_derivative(p, j + k));
  }
}

TEST(DividedDerivative, MatchesIteratedDerivativeOverFactorial) {
  Rng rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    IntPolynomial p = oracle::random_poly(rng, 15, 50);
    for (size_t j = 0; j < 6; ++j) {
      IntPolynomial d = p;
      for (size_t i = 0; i < j; ++i) d = d.derivative();
      EXPECT_EQ(d, factorial(j) * divided_derivative(p, j));
    }
  }
}

TEST(Measure, Examples) {
  auto m = measure(P({4, 0, 6}));
  EXPECT_EQ(m.content, 2);
  EXPECT_EQ(m.height, 3);
  EXPECT_EQ(m.sup_norm, 6);
  EXPECT_EQ(m.length, 10);
  m = measure(P({0, -3}));
  EXPECT_EQ(m.content, 3);
  EXPECT_EQ(m.height, 1);
  m = measure(P({20, -8, 0, 12}));
  EXPECT_EQ(m.content, 4);
  EXPECT_EQ(m.height, 5);
  EXPECT_THROW(measure(IntPolynomial{}), Error);
}

TEST(Measure, Invariants) {
  Rng rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    IntPolynomial p = Int(random_long(rng, 1, 30)) * oracle::random_poly(rng, random_long(rng, 0, 10), 100);
    auto m = measure(p);
    EXPECT_EQ(m.height * m.content, Rat(m.sup_norm));
    for (auto& c : p.coeffs()) EXPECT_TRUE(mpz_divisible_p(c.get_mpz_t(), m.content.get_mpz_t()));
    EXPECT_EQ(p.divexact(m.content).content(), 1);
  }
}

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd_set({P({-1, 0, 1}), P({-1, 0, 0, 1})}), P({-1, 1}));
  EXPECT_EQ(gcd_set({P({32, 0, -12, 0, 1}), P({32, 0, 0, -12, 0, 0, 1})}), P({-2, 1}));
  EXPECT_EQ(gcd_set({P({6}), P({4})}), P({2}));
  EXPECT_EQ(gcd_set({IntPolynomial{}, P({0, -3})}), P({0, 3}));
  EXPECT_THROW(gcd_set({IntPolynomial{}, IntPolynomial{}}), Error);
}

TEST(Gcd, ContentTracking) {
  // 6(T-1)(T+2) and 4(T-1)(T-5): Z[T] gcd is 2(T-1)
  IntPolynomial a = Int(6) * P({-1, 1}) * P({2, 1});
  IntPolynomial b = Int(-4) * P({-1, 1}) * P({-5, 1});
  EXPECT_EQ(gcd_set({a, b}), P({-2, 2}));
}

TEST(Gcd, AgreesWithRationalEuclid) {
  Rng rng(17);
  for (int iter = 0; iter < 80; ++iter) {
    IntPolynomial g = oracle::random_poly(rng, random_long(rng, 0, 6), 20);
    IntPolynomial a = g * oracle::random_poly(rng, random_long(rng, 0, 12), 20);
    IntPolynomial b = g * oracle::random_poly(rng, random_long(rng, 0, 12), 20);
    IntPolynomial got = gcd_set({a, b});
    EXPECT_EQ(got.primitive_part(), oracle::euclid_gcd_primitive(a, b));
    EXPECT_EQ(got.content(), gcd(a.content(), b.content()));
    EXPECT_TRUE(divides(got, a));
    EXPECT_TRUE(divides(got, b));
    EXPECT_TRUE(divides(g.primitive_part(), got));
    EXPECT_GT(got.leading(), 0);
  }
}

TEST(Gcd, HugeCoefficients) {
  Rng rng(23);
  Int big = ipow(Int(2), 3000) + 7;
  IntPolynomial g = P({1, 1}) * IntPolynomial(std::vector<Int>{big, Int(-3), Int(1)});
  IntPolynomial a = g * oracle::random_poly(rng, 20, 1000000);
  IntPolynomial b = g * oracle::random_poly(rng, 25, 1000000);
  IntPolynomial got = gcd_set({a, b});
  EXPECT_TRUE(divides(g, got));
  EXPECT_TRUE(divides(got, a) && divides(got, b));
  EXPECT_EQ(got.primitive_part(), oracle::euclid_gcd_primitive(a, b));
}

TEST(Gcd, CommonFactorsFromFactorizationDivideGcd) {
  Rng rng(29);
  for (int iter = 0; iter < 30; ++iter) {
    IntPolynomial shared = oracle::random_poly(rng, 2, 5);
    IntPolynomial a = shared * oracle::random_poly(rng, 3, 5);
    IntPolynomial b = shared * oracle::random_poly(rng, 3, 5);
    IntPolynomial g = gcd_set({a, b});
    auto fa = factor_irreducible(a);
    for (auto& [f, e] : fa.factors) {
      IntPolynomial fe = f.pow(e);
      if (divides(fe, b)) {
        EXPECT_TRUE(divides(fe, g)) << f.pretty();
      }
    }
  }
}

TEST(Factor, Examples) {
  auto f = factor_irreducible(P({-1, 0, 0, 0, 1}));
  EXPECT_EQ(f.content, 1);
  EXPECT_EQ(f.unit_sign, 1);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0].first, P({-1, 1}));
  EXPECT_EQ(f.factors[1].first, P({1, 1}));
  EXPECT_EQ(f.factors[2].first, P({1, 0, 1}));

  f = factor_irreducible(P({-6, 0, 6}));
  EXPECT_EQ(f.content, 6);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, P({-1, 1}));
  EXPECT_EQ(f.factors[1].first, P({1, 1}));

  f = factor_irreducible(P({4, 0, 0, 0, 1}));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, P({2, -2, 1}));
  EXPECT_EQ(f.factors[1].first, P({2, 2, 1}));
  EXPECT_EQ(f.factors[0].first * f.factors[1].first, P({4, 0, 0, 0, 1}));
}

TEST(Factor, NegativeAndMultiplicities) {
  IntPolynomial p = Int(-10) * P({0, 1}).pow(3) * P({-2, 3}).pow(2) * P({1, 1, 1});
  auto f = factor_irreducible(p);
  EXPECT_EQ(f.unit_sign, -1);
  EXPECT_EQ(f.content, 10);
  EXPECT_EQ(f.expand(), p);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0], std::make_pair(P({0, 1}), 3u));
  EXPECT_EQ(f.factors[1], std::make_pair(P({-2, 3}), 2u));
}

TEST(Factor, RandomProductsReconstructAndAreIrreducible) {
  Rng rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    IntPolynomial p = IntPolynomial::constant(random_long(rng, 1, 12) * (iter % 2 ? 1 : -1));
    int parts = static_cast<int>(random_long(rng, 1, 3));
    for (int k = 0; k < parts; ++k)
      p *= oracle::random_poly(rng, random_long(rng, 1, 3), 6).pow(static_cast<unsigned long>(random_long(rng, 1, 2)));
    auto f = factor_irreducible(p);
    ASSERT_EQ(f.expand(), p);
    for (size_t i = 0; i < f.factors.size(); ++i) {
      auto& q = f.factors[i].first;
      EXPECT_EQ(q.content(), 1);
      EXPECT_GT(q.leading(), 0);
      EXPECT_TRUE(oracle::kronecker_irreducible(q)) << q.pretty();
      for (size_t j = 0; j < i; ++j) EXPECT_NE(q, f.factors[j].first);
    }
  }
}

TEST(Factor, SwinnertonDyerStyleAndCyclotomicProducts) {
  // x^8 - 40x^6 + 352x^4 - 960x^2 + 576: minimal polynomial of sqrt2+sqrt3+sqrt5, splits mod every prime
  IntPolynomial sd = P({576, 0, -960, 0, 352, 0, -40, 0, 1});
  auto f = factor_irreducible(sd);
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_TRUE(oracle::kronecker_irreducible(sd));

  IntPolynomial t60 = IntPolynomial::monomial(1, 60) - IntPolynomial::constant(1);
  f = factor_irreducible(t60);
  EXPECT_EQ(f.factors.size(), 12u); // one factor per divisor of 60
  EXPECT_EQ(f.expand(), t60);
}

TEST(Factor, HighDegreeIrreducible) {
  IntPolynomial p = IntPolynomial::monomial(1, 120) - IntPolynomial::constant(2);
  auto f = factor_irreducible(p);
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].first, p);
  // (T^2-2)(T^3-3) composed with T^20
  IntPolynomial q = (P({-2, 0, 1}) * P({-3, 0, 0, 1})).compose_power(20);
  f = factor_irreducible(q);
  EXPECT_EQ(f.expand(), q);
  EXPECT_EQ(f.factors.size(), 2u);
}

TEST(Primary, Examples) {
  EXPECT_TRUE(is_primary(P({1, 0, 1}).pow(3)));
  EXPECT_FALSE(is_primary(P({-1, 1}) * P({1, 1})));
  EXPECT_TRUE(is_primary(P({8})));
  EXPECT_TRUE(is_primary(-P({-2, 1}).pow(2)));
  EXPECT_FALSE(is_primary(P({1})));
  EXPECT_FALSE(is_primary(P({6})));
  EXPECT_FALSE(is_primary(Int(2) * P({-2, 1})));
}

TEST(Format, TextAndJsonRoundTrip) {
  Rng rng(37);
  for (int iter = 0; iter < 50; ++iter) {
    IntPolynomial p = oracle::random_poly(rng, random_long(rng, 0, 20), 1000000000);
    p = IntPolynomial::monomial(ipow(Int(3), 200), 2) * p + p;
    EXPECT_EQ(IntPolynomial::from_text(p.to_text()), p);
    EXPECT_EQ(from_json(to_json(p)), p);
    EXPECT_EQ(IntPolynomial::from_text(p.to_text()).to_text(), p.to_text());
  }
  EXPECT_EQ(IntPolynomial::from_text("0"), IntPolynomial{});
  EXPECT_EQ(IntPolynomial{}.to_text(), "0");
  EXPECT_EQ(IntPolynomial::from_text("  -3 0 +2 "), P({-3, 0, 2}));
  EXPECT_THROW(IntPolynomial::from_text("1 x"), Error);
}
