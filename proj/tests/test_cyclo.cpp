#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "smallval/cyclo.hpp"

using namespace smallval;
using namespace smallval::cyclo;
using numeric::Real;
using numeric::Verdict;

namespace {

IntPolynomial P(std::initializer_list<long> c) { return IntPolynomial(c); }
IntPolynomial T() { return IntPolynomial::x(); }

PolarPoint pt(const std::string& s) { return PolarPoint::parse(s); }

PolarPoint perturbed_root(long k, long n, const Rat& eps) { return PolarPoint(1 + eps, 0, Rat(k, n), 0); }

} // namespace

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic_poly(1), P({-1, 1}));
  EXPECT_EQ(cyclotomic_poly(6), P({1, -1, 1}));
  EXPECT_EQ(cyclotomic_poly(12), P({1, 0, -1, 0, 1}));
  // the first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
  EXPECT_EQ(cyclotomic_poly(105).coeff(7), -2);
}

TEST(Cyclotomic, DegreeDivisibilityAndOracle) {
  for (unsigned long n = 1; n <= 150; ++n) {
    IntPolynomial c = cyclotomic_poly(n);
    EXPECT_EQ(Int(c.degree()), euler_phi(Int(n)));
    EXPECT_TRUE(polyz::divides(c, IntPolynomial::monomial(1, n) - IntPolynomial::constant(1)));
    EXPECT_EQ(c, oracle::cyclotomic_by_division(n)) << n;
  }
}

TEST(CycloSplit, Examples) {
  IntPolynomial p = T().pow(2) * P({-1, 1}).pow(3) * P({1, 1, 1}) * P({-3, 2});
  CycloSplit s = cyclo_split(p, 3);
  EXPECT_EQ(s.r, 2u);
  EXPECT_EQ(s.phi, P({-1, 1}));
  EXPECT_EQ(s.p0, P({1, 1, 1}) * P({-3, 2}));
  s = cyclo_split(p, 1);
  EXPECT_EQ(s.r, 2u);
  EXPECT_EQ(s.phi, P({-1, 1}).pow(3) * P({1, 1, 1}));
  EXPECT_EQ(s.p0, P({-3, 2}));
  s = cyclo_split(P({-3, 2}), 1);
  EXPECT_EQ(s.r, 0u);
  EXPECT_EQ(s.phi, IntPolynomial::constant(1));
  EXPECT_EQ(s.p0, P({-3, 2}));
}

TEST(CycloSplit, ReconstructsAndIsMaximal) {
  Rng rng(211);
  for (int iter = 0; iter < 60; ++iter) {
    IntPolynomial p = oracle::random_poly(rng, random_long(rng, 0, 4), 20);
    int k = static_cast<int>(random_long(rng, 0, 4));
    for (int j = 0; j < k; ++j) p *= cyclotomic_poly(random_long(rng, 1, 30)).pow(random_long(rng, 1, 3));
    p *= T().pow(random_long(rng, 0, 2));
    unsigned long t = random_long(rng, 1, 3);
    CycloSplit s = cyclo_split(p, t);
    EXPECT_EQ(s.expand(), p);
    EXPECT_NE(s.p0.constant_term(), 0);
    EXPECT_TRUE(is_cyclotomic(s.phi));
    for (unsigned long n = 1; n <= 60; ++n) {
      IntPolynomial bigger = (cyclotomic_poly(n) * s.phi).pow(t) * IntPolynomial::monomial(1, s.r);
      EXPECT_FALSE(polyz::divides(bigger, p)) << p.to_text() << " n=" << n;
    }
  }
}

TEST(Cyclotomic, DecompositionAndTorsionRoots) {
  Rng rng(223);
  for (int iter = 0; iter < 40; ++iter) {
    std::map<unsigned long, unsigned> want;
    IntPolynomial phi = IntPolynomial::constant(1);
    for (int j = 0; j < 3; ++j) {
      unsigned long n = random_long(rng, 1, 40);
      unsigned e = random_long(rng, 1, 2);
      want[n] += e;
      phi *= cyclotomic_poly(n).pow(e);
    }
    auto dec = cyclotomic_decomposition(phi);
    ASSERT_TRUE(dec.has_value());
    std::map<unsigned long, unsigned> got(dec->begin(), dec->end());
    EXPECT_EQ(got, want);
    EXPECT_TRUE(has_torsion_or_zero_root(phi * P({-2, 1})));
  }
  EXPECT_FALSE(is_cyclotomic(P({-2, 1})));
  EXPECT_FALSE(is_cyclotomic(P({1, 0, 2})));
  EXPECT_FALSE(has_torsion_or_zero_root(P({-2, 0, 1})));
  EXPECT_TRUE(has_torsion_or_zero_root(P({0, 3, 1})));
}

TEST(OrderBound, ExhaustiveSmallRange) {
  BoundReport r = order_bound_report(60, 40);
  EXPECT_EQ(r.verdict, Verdict::VERIFIED);
  EXPECT_GT(r.checks, 1000);
}

TEST(OrderBound, RootsOfRandomProducts) {
  // Every root of an actual product satisfies the bound with its true multiplicity.
  Rng rng(227);
  for (int iter = 0; iter < 100; ++iter) {
    IntPolynomial phi = IntPolynomial::constant(1);
    while (true) {
      IntPolynomial next = phi * cyclotomic_poly(random_long(rng, 1, 60));
      if (next.degree() > 40) break;
      phi = next;
    }
    if (phi.degree() < 1) continue;
    for (auto& [z, g] : roots_with_multiplicity(phi))
      EXPECT_TRUE(order_bound_holds(z.order().get_ui(), g, phi.degree()));
  }
}

TEST(RootSeparation, ExhaustiveToOrderTwenty) {
  BoundReport r = root_separation_report(20);
  EXPECT_EQ(r.verdict, Verdict::VERIFIED);
  long roots = 0;
  for (long n = 1; n <= 20; ++n) roots += euler_phi(Int(n)).get_si();
  EXPECT_EQ(r.checks, roots * (roots - 1));
}

TEST(NearestRoot, Examples) {
  NearestRoot a = nearest_root(P({1, 0, 1}), pt("9/10*i"));
  EXPECT_EQ(a.zeta, RootOfUnity(1, 4));
  EXPECT_EQ(a.g, 1u);
  EXPECT_EQ(a.report.verdict, Verdict::VERIFIED);
  EXPECT_TRUE(a.certified_nearest);
  EXPECT_TRUE(a.report.lhs.contains(Rat(1, 10)));
  EXPECT_TRUE(a.report.rhs.contains(Rat(1024 * 19, 100)));

  NearestRoot b = nearest_root(P({-1, 1}).pow(2), pt("101/100"));
  EXPECT_EQ(b.zeta, RootOfUnity(0, 1));
  EXPECT_EQ(b.g, 2u);
  EXPECT_EQ(b.report.verdict, Verdict::VERIFIED);

  NearestRoot c = nearest_root(P({-1, 1}), pt("1"));
  EXPECT_EQ(c.g, 1u);
  EXPECT_EQ(c.report.verdict, Verdict::VERIFIED);
  EXPECT_TRUE(c.report.lhs.is_point() && c.report.lhs.contains(0));
  EXPECT_TRUE(c.report.rhs.contains(0));
}

TEST(NearestRoot, RealPointsTieBetweenConjugates) {
  NearestRoot a = nearest_root(P({1, 0, 1}), pt("2"));
  EXPECT_TRUE(a.certified_nearest);
  EXPECT_EQ(a.report.verdict, Verdict::VERIFIED);
}

TEST(NearestRoot, BoundHoldsOnRandomPoints) {
  Rng rng(229);
  for (int iter = 0; iter < 60; ++iter) {
    IntPolynomial phi = cyclotomic_poly(random_long(rng, 1, 15)) * cyclotomic_poly(random_long(rng, 1, 15));
    PolarPoint x(Rat(random_long(rng, 1, 300), 100), 0, Rat(random_long(rng, 0, 99), 100), 0);
    EXPECT_EQ(nearest_root(phi, x).report.verdict, Verdict::VERIFIED) << phi.to_text() << " " << x.to_string();
  }
}

TEST(Unify, Examples) {
  Rat eps(1, 1000000);
  Unified u = unify_approximations(2, Real(Rat(3, 1000000)), {{Int(2)}}, {RootOfUnity(0, 1)}, {PolarPoint::rational(1 + eps)});
  EXPECT_EQ(u.D, 1);
  EXPECT_EQ(u.Z, RootOfUnity(0, 1));
  EXPECT_EQ(u.a, std::vector<Int>{Int(1)});
  EXPECT_EQ(u.report.verdict, Verdict::VERIFIED);
  EXPECT_EQ(u.report.checks, 5);

  std::vector<PolarPoint> xi{PolarPoint::root_of_unity(1, 8), PolarPoint::root_of_unity(3, 8)};
  Unified v = unify_approximations(2, Real(0), {{Int(1), Int(0)}, {Int(0), Int(1)}}, {RootOfUnity(1, 8), RootOfUnity(3, 8)}, xi);
  EXPECT_EQ(v.D, 8);
  EXPECT_EQ(v.a, (std::vector<Int>{Int(1), Int(3)}));
  EXPECT_EQ(v.report.verdict, Verdict::VERIFIED);
  EXPECT_TRUE(v.report.lhs.contains(0) && v.report.rhs.contains(0));

  EXPECT_THROW(unify_approximations(2, Real(1), {{Int(2)}}, {RootOfUnity(0, 1)}, {PolarPoint::rational(1 + eps)}), Error);
  EXPECT_THROW(unify_approximations(2, Real(0), {{Int(1), Int(1)}, {Int(2), Int(2)}}, {RootOfUnity(1, 8), RootOfUnity(3, 8)}, xi),
               Error);
}

TEST(Unify, NonUnimodularWitnesses) {
  // xi = (zeta_12 (1+eps), zeta_5^2 (1-eps)) approximated through witnesses (2,1), (1,-1)
  Rat eps(1, ipow(Int(10), 30));
  std::vector<PolarPoint> xi{perturbed_root(1, 12, eps), perturbed_root(2, 5, -eps)};
  std::vector<IntVec> w{{Int(2), Int(1)}, {Int(1), Int(-1)}};
  std::vector<RootOfUnity> z;
  for (auto& v : w) z.push_back(RootOfUnity::from_turns(Rat(1, 12) * v[0] + Rat(2, 5) * v[1]));
  Unified u = unify_approximations(2, Real(Rat(1, ipow(Int(10), 28))), w, z, xi);
  EXPECT_EQ(u.D, 60);
  EXPECT_EQ(u.report.verdict, Verdict::VERIFIED);
  // Z^(a_j) recovers the exact roots
  EXPECT_EQ(u.Z.pow(u.a[0]), RootOfUnity(1, 12));
  EXPECT_EQ(u.Z.pow(u.a[1]), RootOfUnity(2, 5));
}

TEST(Dichotomy, SubspaceForPointOffCircle) {
  DichotomyResult r = cyclo_dichotomy(1, 2, Real(Rat(1, ipow(Int(10), 30))), P({-1, 1}), {pt("2")});
  EXPECT_EQ(r.branch, Branch::SUBSPACE);
  EXPECT_EQ(r.normal, IntVec{Int(1)});
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED);
  EXPECT_EQ(r.report.checks, 4);
}

TEST(Dichotomy, NearbyRootForPerturbedCubeRoot) {
  Real delta(Rat(1, ipow(Int(10), 40)));
  std::vector<PolarPoint> xi{perturbed_root(1, 3, Rat(1, ipow(Int(10), 50)))};
  IntPolynomial phi = cyclotomic_poly(3);
  DichotomyResult r = cyclo_dichotomy(2, 1, delta, phi, xi);
  EXPECT_EQ(r.branch, Branch::NEARBY_ROOT);
  EXPECT_EQ(r.Z, RootOfUnity(1, 3));
  EXPECT_EQ(r.D, 3);
  EXPECT_EQ(r.G, 1u);
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED);
  EXPECT_EQ(nearby_root_exclusivity(r, 2, 1, delta, phi, xi).verdict, Verdict::VERIFIED);
}

TEST(Dichotomy, DeltaOutOfRange) {
  EXPECT_THROW(cyclo_dichotomy(1, 2, Real(Rat(1, 100)), P({-1, 1}), {pt("2")}), Error);
  EXPECT_THROW(cyclo_dichotomy(1, 2, Real(0), P({-1, 1}), {pt("2")}), Error);
}

TEST(Dichotomy, RandomInstancesReverifyAtDoubledPrecision) {
  Rng rng(233);
  int nearby = 0;
  for (int iter = 0; iter < 30; ++iter) {
    size_t m = random_long(rng, 1, 2);
    long N = random_long(rng, 1, 2);
    IntPolynomial phi = cyclotomic_poly(random_long(rng, 1, 8));
    if (random_long(rng, 0, 1)) phi *= cyclotomic_poly(random_long(rng, 1, 6));
    long d = phi.degree();
    Rat cap = 1 / rpow(Rat(8 * long(m) * d * d * d * d * N), 2 * long(m) * d);
    Real delta(cap / 7);
    std::vector<PolarPoint> xi;
    for (size_t j = 0; j < m; ++j) {
      long kind = random_long(rng, 0, 2);
      if (kind == 0) xi.push_back(PolarPoint(Rat(random_long(rng, 1, 40), 20), 0, Rat(random_long(rng, 0, 11), 12), 0));
      else if (kind == 1) xi.push_back(PolarPoint::root_of_unity(random_long(rng, 0, 9), 10));
      else xi.push_back(perturbed_root(random_long(rng, 0, 5), 6, Rat(1, ipow(Int(10), 400))));
    }
    DichotomyResult r = cyclo_dichotomy(d, N, delta, phi, xi);
    EXPECT_EQ(r.report.verdict, Verdict::VERIFIED) << phi.to_text();
    numeric::PrecisionPolicy doubled{256, 32768};
    EXPECT_EQ(dichotomy_report(r, d, N, delta, phi, xi, doubled).verdict, Verdict::VERIFIED);
    if (r.branch == Branch::NEARBY_ROOT) {
      ++nearby;
      EXPECT_EQ(nearby_root_exclusivity(r, d, N, delta, phi, xi).verdict, Verdict::VERIFIED);
    }
  }
  EXPECT_GT(nearby, 0);
}

TEST(Dichotomy, WithConstant) {
  std::vector<PolarPoint> xi{pt("2"), pt("3")};
  Real delta(Rat(1, ipow(Int(10), 20)));
  DichotomyResult r = dichotomy_with_constant(1, 1, delta, Rat(1, 2), P({-1, 1}), xi);
  EXPECT_EQ(r.branch, Branch::SUBSPACE);
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED);
  EXPECT_THROW(dichotomy_with_constant(1, 1, Real(Rat(1, 4)), Rat(1, 2), P({-1, 1}), xi), Error);
}

TEST(Dirichlet, TwoAndThree) {
  // independent search in long double
  long b_ref = 0;
  for (long b = 1; b <= 64 && !b_ref; ++b) {
    long double x = b * std::log(2.0L), y = b * std::log(3.0L);
    if (std::fabs(x - std::round(x)) <= 0.125L && std::fabs(y - std::round(y)) <= 0.125L) b_ref = b;
  }
  ASSERT_EQ(b_ref, 10);
  DirichletResult r = dirichlet_subspace(2, {pt("2"), pt("3")});
  EXPECT_EQ(r.b, 10);
  EXPECT_EQ(r.a, (std::vector<Int>{Int(7), Int(11)}));
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED);
}

TEST(Dirichlet, ExponentialPoints) {
  DirichletResult r = dirichlet_subspace(3, {pt("e"), pt("e")});
  EXPECT_EQ(r.b, 1);
  EXPECT_EQ(r.a, (std::vector<Int>{Int(1), Int(1)}));
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED);
}

TEST(Dirichlet, UnitCircleRejected) {
  EXPECT_THROW(dirichlet_subspace(2, {pt("i"), pt("expi(1)")}), Error);
  try {
    dirichlet_subspace(2, {pt("zeta(1/5)"), pt("-1")});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unit-circle"), std::string::npos);
  }
}
