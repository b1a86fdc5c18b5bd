#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smallval/gcdbounds.hpp"

using namespace smallval;
using namespace smallval::gcdbounds;
using numeric::Verdict;

namespace {

IntPolynomial P(std::initializer_list<long> c) { return IntPolynomial(c); }
IntPolynomial lin(long root) { return IntPolynomial::linear_root(Int(root)); }
IntPolynomial lin(const Int& root) { return IntPolynomial::linear_root(root); }

PolarPoint pt(const std::string& s) { return PolarPoint::parse(s); }

void expect_error(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

// A random polynomial without roots at zero or at roots of unity.
IntPolynomial random_torsion_free(Rng& rng, long deg, long bound) {
  while (true) {
    IntPolynomial p = oracle::random_poly(rng, deg, bound);
    if (p.degree() == deg && !cyclo::has_torsion_or_zero_root(p)) return p;
  }
}

Exponents random_exponents(Rng& rng, unsigned long max_a, size_t count) {
  Exponents A;
  while (A.size() < count) {
    unsigned long a = random_long(rng, 1, static_cast<long>(max_a));
    if (std::find(A.begin(), A.end(), a) == A.end()) A.push_back(a);
  }
  return A;
}

} // namespace

TEST(PowerFamily, Examples) {
  Exponents A = {2, 3};
  EXPECT_EQ(gcd_power_family(lin(4) * lin(8), A), lin(2));
  EXPECT_EQ(gcd_power_family(P({-2, 0, 1}), A), P({1}));
  EXPECT_EQ(gcd_power_family(lin(1), A), lin(1));
  // the content of P survives
  EXPECT_EQ(gcd_power_family(Int(6) * lin(4) * lin(8), A), Int(6) * lin(2));
}

TEST(PowerFamily, DividesEveryMemberAndMatchesEuclid) {
  Rng rng(101);
  for (int it = 0; it < 60; ++it) {
    Exponents A = random_exponents(rng, 4, random_long(rng, 1, 3));
    long c = random_long(rng, 2, 3) * (random_long(rng, 0, 1) ? 1 : -1);
    IntPolynomial q = oracle::random_poly(rng, random_long(rng, 0, 4), 9);
    if (random_long(rng, 0, 1))
      for (auto a : A) q *= lin(Int(ipow(Int(c), a)));
    if (q.is_zero()) continue;
    IntPolynomial Q = gcd_power_family(q, A);
    IntPolynomial ref = q.compose_power(A[0]).primitive_part();
    for (auto a : A) {
      EXPECT_TRUE(polyz::divides(Q, q.compose_power(a)));
      ref = oracle::euclid_gcd_primitive(ref, q.compose_power(a));
    }
    EXPECT_EQ(Q.primitive_part(), ref.normalized_sign());
  }
}

TEST(PowerFamily, DividesAtDegreeThirty) {
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    Exponents A = random_exponents(rng, 5, 3);
    IntPolynomial q = oracle::random_poly(rng, random_long(rng, 1, 30), 50);
    IntPolynomial Q = gcd_power_family(q, A);
    for (auto a : A) EXPECT_TRUE(polyz::divides(Q, q.compose_power(a)));
  }
}

TEST(DerivativeFamily, Examples) {
  IntPolynomial p0 = lin(2) * lin(2) * lin(3);
  EXPECT_EQ(gcd_derivative_family(p0, {1}, 2), lin(2));
  EXPECT_EQ(gcd_derivative_family(p0, {1}, 1), p0);
  Rng rng(3);
  for (int it = 0; it < 20; ++it) {
    IntPolynomial p = oracle::random_poly(rng, random_long(rng, 1, 8), 20);
    Exponents A = random_exponents(rng, 4, 2);
    EXPECT_EQ(gcd_derivative_family(p, A, 1), gcd_power_family(p, A));
  }
  // squarefree p0: the t = 2 family gcd is the gcd of the two power-family gcds
  for (int it = 0; it < 20; ++it) {
    IntPolynomial p = lin(random_long(rng, -5, 5)) * lin(random_long(rng, -5, 5)) * oracle::random_poly(rng, 2, 6);
    if (p.is_zero() || polyz::detail::squarefree_parts(p.primitive_part()).size() != 1 ||
        polyz::detail::squarefree_parts(p.primitive_part())[0].second != 1)
      continue;
    Exponents A = {2, 3};
    IntPolynomial ref = polyz::gcd(gcd_power_family(p, A), gcd_power_family(p.divided_derivative(1), A));
    EXPECT_EQ(gcd_derivative_family(p, A, 2), ref);
    EXPECT_EQ(gcd_derivative_family(p, A, 2).degree(), 0);
  }
}

TEST(DerivativeFamily, MultiplicityIdentity) {
  Rng rng(17);
  int nontrivial = 0;
  for (int it = 0; it < 60; ++it) {
    Exponents A = random_exponents(rng, 3, random_long(rng, 1, 2));
    unsigned long t = random_long(rng, 1, 3);
    // repeated roots c^a for every a give Q1 a factor T - c of multiplicity m
    long c = random_long(rng, 2, 3);
    long m = random_long(rng, 0, 4);
    IntPolynomial P1 = IntPolynomial::constant(1);
    for (auto a : A) P1 *= lin(Int(ipow(Int(c), a))).pow(m);
    P1 *= random_torsion_free(rng, random_long(rng, 1, 2), 5);
    IntPolynomial Pfull = P1 * IntPolynomial::monomial(1, random_long(rng, 0, 2)) *
                          cyclo::cyclotomic_poly(random_long(rng, 1, 6)).pow(random_long(rng, 0, 4));
    BoundReport rep = multiplicity_identity(Pfull, A, t);
    EXPECT_EQ(rep.verdict, Verdict::VERIFIED) << rep.to_json().dump();
    if (m >= static_cast<long>(t)) ++nontrivial;
  }
  EXPECT_GT(nontrivial, 5);
}

TEST(GcdBound, ParamsAndPreconditions) {
  Exponents window = primes_in_window(200);
  ASSERT_EQ(window.size(), 21u);
  GcdBoundParams prm{200, Exponents(window.begin(), window.begin() + 11), 2, 5};
  EXPECT_NO_THROW(prm.validate());
  EXPECT_EQ(prm.c(), 2 * 1024);
  GcdBoundParams bad = prm;
  bad.l = 1;
  expect_error(ErrorKind::Precondition, [&] { bad.validate(); });
  bad = prm;
  bad.n = 7;  // 7 > 330/48
  expect_error(ErrorKind::Precondition, [&] { bad.validate(); });
  bad = prm;
  bad.A[0] = 97;
  expect_error(ErrorKind::Precondition, [&] { bad.validate(); });
  expect_error(ErrorKind::Precondition, [&] { gcd_bound_report(lin(1), prm); });
  expect_error(ErrorKind::Precondition, [&] { gcd_bound_report(IntPolynomial::x() * lin(2), prm); });
}

TEST(GcdBound, RandomInstancesVerify) {
  Rng rng(55);
  Exponents window = primes_in_window(200);
  GcdBoundParams prm{200, Exponents(window.begin(), window.begin() + 11), 2, 5};
  for (int it = 0; it < 25; ++it) {
    IntPolynomial p = random_torsion_free(rng, 5, 1000000);
    BoundReport rep = gcd_bound_report(p, prm);
    EXPECT_EQ(rep.verdict, Verdict::VERIFIED) << rep.to_json().dump();
    EXPECT_EQ(rep.checks, 2);
  }
}

TEST(GcdBound, NontrivialGcd) {
  // A = 13 primes in [75, 150]; P = prod (T - 2^a) has gcd T - 2
  Exponents window = primes_in_window(150);
  ASSERT_GE(window.size(), 13u);
  Exponents A(window.begin(), window.begin() + 13);
  IntPolynomial p = IntPolynomial::constant(1);
  for (auto a : A) p *= lin(ipow(Int(2), a));
  GcdBoundParams prm{150, A, 2, 14};
  EXPECT_EQ(gcd_power_family(p, A), lin(2));
  BoundReport rep = gcd_bound_report(p, prm);
  EXPECT_EQ(rep.verdict, Verdict::VERIFIED) << rep.to_json().dump();
}

TEST(ResultantProduct, Examples) {
  BoundReport rep = resultant_product_check({SamplePoint::zero()}, 1, 1, {lin(2), lin(3)});
  EXPECT_EQ(rep.verdict, Verdict::VERIFIED);
  EXPECT_TRUE(rep.lhs.contains(Rat(1)));
  expect_error(ErrorKind::Precondition,
               [] { resultant_product_check({pt("2"), pt("3")}, 3, 2, {lin(2), lin(3)}); });
  expect_error(ErrorKind::Precondition, [] { resultant_product_check({pt("2")}, 2, 1, {lin(2)}); });
}

TEST(ResultantProduct, RandomInstancesVerify) {
  Rng rng(23);
  const std::vector<std::string> pool = {"3/2", "-2/3", "5/4", "1/3", "i*3/2", "zeta(1/5)*2", "exp(1/3)", "exp(-1/2)*zeta(1/7)",
                                         "7/5", "0"};
  for (int it = 0; it < 20; ++it) {
    std::vector<SamplePoint> E;
    while (E.size() < 3) {
      SamplePoint x = SamplePoint::parse(pool[random_long(rng, 0, static_cast<long>(pool.size()) - 1)]);
      if (std::find(E.begin(), E.end(), x) == E.end()) E.push_back(x);
    }
    // share a factor so that Q is not constant
    IntPolynomial common = oracle::random_poly(rng, 2, 4);
    if (common.is_zero()) continue;
    std::vector<IntPolynomial> ps;
    for (int i = 0; i < 3; ++i) ps.push_back(common * oracle::random_poly(rng, random_long(rng, 1, 8), 30));
    bool ok = std::all_of(ps.begin(), ps.end(), [](const IntPolynomial& p) { return !p.is_zero() && p.degree() <= 10; });
    if (!ok) continue;
    BoundReport rep = resultant_product_check(E, 10, 2, ps);
    EXPECT_EQ(rep.verdict, Verdict::VERIFIED) << rep.to_json().dump();
  }
}

TEST(FirstStep, InversePowerNumeratorMatchesSeries) {
  Rng rng(2);
  for (int it = 0; it < 30; ++it) {
    IntPolynomial phi = cyclo::cyclotomic_poly(random_long(rng, 1, 12)) * cyclo::cyclotomic_poly(random_long(rng, 1, 6));
    unsigned long t = random_long(rng, 1, 4);
    Rat xi = Rat(random_long(rng, -9, 9)) / random_long(rng, 2, 7);
    if (phi.eval(xi) == 0) continue;
    auto series = oracle::inverse_power_series(phi, t, xi, 5);
    for (unsigned long j = 0; j <= 5; ++j) {
      Rat v = inverse_power_numerator(phi, t, j).eval(xi) / rpow(phi.eval(xi), static_cast<long>(t + j)) / Rat(factorial(j));
      EXPECT_EQ(v, series[j]) << phi.to_text() << " t=" << t << " j=" << j;
    }
  }
}

TEST(FirstStep, InversePowerBoundNeedsLength) {
  IntPolynomial phi = cyclo::cyclotomic_poly(7);
  PolarPoint xi = pt("5/4");
  // |A_1(5/4)| = 3 |Phi_7'(5/4)| = 139.55.. against 30 (5/4)^6 = 114.44..
  BoundReport sup = inverse_power_bound(phi, 3, 1, xi, PhiNorm::Sup);
  EXPECT_EQ(sup.verdict, Verdict::VIOLATED);
  EXPECT_TRUE(sup.lhs.contains(Rat(71451) / 512));
  EXPECT_EQ(inverse_power_bound(phi, 3, 1, xi).verdict, Verdict::VERIFIED);
  // L(Phi) <= 2^deg Phi still holds, which is all the cofactor bound uses
  for (long m = 1; m <= 60; ++m) {
    IntPolynomial c = cyclo::cyclotomic_poly(m);
    EXPECT_LE(c.length(), ipow(Int(2), c.degree())) << m;
  }
}

TEST(FirstStep, AuxiliaryBoundsHold) {
  Rng rng(31);
  const std::vector<std::string> pool = {"3/2", "-2/3", "5/4", "1/3", "i*3/2", "zeta(1/5)*2", "exp(1/3)", "zeta(2/9)*9/10", "-7/5"};
  for (int it = 0; it < 40; ++it) {
    PolarPoint xi = pt(pool[random_long(rng, 0, static_cast<long>(pool.size()) - 1)]);
    IntPolynomial phi = cyclo::cyclotomic_poly(random_long(rng, 1, 10));
    unsigned long t = random_long(rng, 1, 3);
    for (unsigned long j = 0; j <= 4; ++j) {
      BoundReport ib = inverse_power_bound(phi, t, j, xi);
      EXPECT_TRUE(ib.verified()) << ib.to_json().dump();
    }

    IntPolynomial p0 = oracle::random_poly(rng, random_long(rng, 0, 3), 20);
    if (p0.is_zero()) continue;
    cyclo::CycloSplit s;
    s.r = random_long(rng, 0, 2);
    s.phi = phi;
    s.t = t;
    s.p0 = p0;
    unsigned long n = std::max<unsigned long>(s.expand().degree(), t);
    EXPECT_TRUE(cofactor_derivative_bound(s, n, xi).verified());

    unsigned long a = random_long(rng, 1, 5);
    unsigned long tt = random_long(rng, 1, 4);
    Rat q = Rat(random_long(rng, -9, 9)) / random_long(rng, 1, 5);
    if (q == 0) q = 1;
    EXPECT_TRUE(power_transfer_bound(p0 * phi, a, tt, PolarPoint::rational(q)).verified());
    EXPECT_TRUE(power_transfer_bound(p0, a, tt, xi).verified());
  }
}

TEST(FirstStep, Instance) {
  IntPolynomial phi6 = cyclo::cyclotomic_poly(6);
  IntPolynomial p = phi6.pow(2) * P({-3, 2}) * lin(5) * IntPolynomial::x();
  std::vector<PolarPoint> E = {pt("3/2"), pt("5/4"), pt("i*2")};
  FirstStepResult r = first_step(3, 7, 2, Rat(300), {2, 3}, E, p);
  EXPECT_EQ(r.split.phi, phi6);
  EXPECT_EQ(r.split.r, 1u);
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED) << r.report.to_json().dump();
  EXPECT_EQ(r.Q, gcd_derivative_family(P({-3, 2}) * lin(5), {2, 3}, 2));
  EXPECT_NO_THROW(r.stats.to_json());

  expect_error(ErrorKind::Precondition, [&] { first_step(3, 7, 2, Rat(300), {2, 3}, {pt("-1")}, p); });
  expect_error(ErrorKind::Hypothesis, [&] { first_step(3, 7, 2, Rat(200), {2, 3}, E, p); });
  expect_error(ErrorKind::Precondition, [&] { first_step(3, 7, 8, Rat(300), {2, 3}, E, p); });
}

TEST(FirstStep, RandomInstancesVerify) {
  Rng rng(41);
  const std::vector<std::string> pool = {"3/2", "-2/3", "5/4", "1/3", "i*3/2", "zeta(1/5)*2", "exp(1/3)", "zeta(2/9)*9/10"};
  for (int it = 0; it < 12; ++it) {
    unsigned long t = random_long(rng, 1, 2), M = random_long(rng, 2, 3);
    std::vector<PolarPoint> E;
    while (E.size() < static_cast<size_t>(random_long(rng, 1, 3))) {
      PolarPoint x = pt(pool[random_long(rng, 0, static_cast<long>(pool.size()) - 1)]);
      if (std::find(E.begin(), E.end(), x) == E.end()) E.push_back(x);
    }
    IntPolynomial p = cyclo::cyclotomic_poly(random_long(rng, 1, 6)).pow(t) * oracle::random_poly(rng, 3, 40);
    if (p.is_zero()) continue;
    unsigned long n = std::max<unsigned long>(p.degree(), t);
    FirstStepResult r = first_step(M, n, t, Rat(static_cast<long>(10 * M * n + 100)), random_exponents(rng, M, random_long(rng, 1, M)), E, p);
    EXPECT_EQ(r.report.verdict, Verdict::VERIFIED) << r.report.to_json().dump();
  }
}

TEST(Linearize, Example) {
  IntPolynomial q1 = lin(2).pow(2) * lin(-3);
  LinearizeResult r = linearize(q1, 2, Rat(3), Real(241), {SamplePoint(pt("19/10"))}, Real(Rat(1, 10)));
  EXPECT_EQ(r.Q, lin(2));
  EXPECT_EQ(r.S, lin(2));
  EXPECT_EQ(r.k, 1u);
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED) << r.report.to_json().dump();
  EXPECT_EQ(r.report.checks, 3);

  expect_error(ErrorKind::Precondition, [&] { linearize(q1, 2, Rat(3), Real(241), {SamplePoint(pt("19/10"))}, Real(1)); });
  expect_error(ErrorKind::Precondition, [&] { linearize(q1, 2, Rat(3), Real(15), {SamplePoint(pt("19/10"))}, Real(Rat(1, 10))); });
}

TEST(Linearize, PurePowerGivesPowerOfR) {
  IntPolynomial R = P({-1, -1, 1});  // T^2 - T - 1, root near 1.618
  IntPolynomial q1 = R.pow(6);
  LinearizeResult r = linearize(q1, 2, Rat(12), Real(1000000), {SamplePoint(pt("1618/1000"))}, Real(Rat(1, 100)));
  EXPECT_EQ(r.R, R);
  EXPECT_EQ(r.S, R.pow(r.k));
  EXPECT_GE(r.k, 1u);
  EXPECT_EQ(r.report.verdict, Verdict::VERIFIED) << r.report.to_json().dump();
}

TEST(Linearize, RandomInstancesVerify) {
  Rng rng(13);
  int runs = 0;
  for (int it = 0; it < 40; ++it) {
    unsigned long t = random_long(rng, 2, 3);
    long b = random_long(rng, 1, 4), c = random_long(rng, -9, 9);
    if (c == 0 || gcd(Int(b), Int(c)) != 1) continue;
    IntPolynomial R = P({-c, b});
    IntPolynomial G = random_torsion_free(rng, random_long(rng, 0, 2), 5);
    IntPolynomial q1 = R.pow(t + random_long(rng, 0, 1)) * G;
    Rat xi = Rat(c) / b + Rat(1) / Rat(random_long(rng, 50, 1000));
    std::vector<SamplePoint> E = {SamplePoint(PolarPoint::rational(xi))};
    Rat d(q1.degree());
    Rat Y = std::max(q1.height(), Rat(ipow(Int(3), q1.degree())));
    // delta: phi(Q) rounded up, kept below 1
    std::vector<IntPolynomial> ders;
    for (unsigned long j = 0; j < t; ++j) ders.push_back(q1.divided_derivative(j));
    Rat phiQ = abs(polyz::gcd_set(ders).eval(xi));
    if (phiQ == 0 || phiQ >= Rat(1, 2)) continue;
    ++runs;
    LinearizeResult r = linearize(q1, t, d, Real(Y), E, Real(phiQ * 2));
    EXPECT_EQ(r.report.verdict, Verdict::VERIFIED) << r.report.to_json().dump();
    EXPECT_TRUE(polyz::is_primary(r.S));
  }
  EXPECT_GT(runs, 10);
}

TEST(Coprimality, Examples) {
  EXPECT_EQ(coprimality_primary(P({-2, 0, 1}), 2, 3).verdict, Verdict::VERIFIED);
  expect_error(ErrorKind::Precondition, [] { coprimality_primary(lin(1), 2, 3); });
  EXPECT_EQ(gcd_power_family(lin(1), {2, 3}), lin(1));
  expect_error(ErrorKind::Precondition, [] { coprimality_primary(lin(2) * lin(3), 2, 3); });
  expect_error(ErrorKind::Precondition, [] { coprimality_primary(P({-2, 0, 1}), 2, 2); });
  // powers of an irreducible are primary
  EXPECT_EQ(coprimality_primary(P({-2, 0, 1}).pow(3), 5, 7).verdict, Verdict::VERIFIED);
}

TEST(Coprimality, RandomPrimary) {
  Rng rng(8);
  int runs = 0;
  for (int it = 0; it < 60 && runs < 30; ++it) {
    IntPolynomial q = random_torsion_free(rng, random_long(rng, 1, 4), 9).primitive_part();
    if (!polyz::is_primary(q)) continue;
    q = q.pow(random_long(rng, 1, 2));
    unsigned long a1 = random_long(rng, 1, 6), a2 = random_long(rng, 1, 6);
    if (a1 == a2) continue;
    ++runs;
    EXPECT_EQ(coprimality_primary(q, a1, a2).verdict, Verdict::VERIFIED);
  }
  EXPECT_GT(runs, 15);
}
