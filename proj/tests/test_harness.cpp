#include <gtest/gtest.h>

#include "smallval/auxpoly.hpp"

using namespace smallval;
using namespace smallval::auxpoly;
using numeric::Verdict;

namespace {

// Rational Gram-Schmidt of the rows.
struct GramSchmidt {
  std::vector<std::vector<Rat>> star;
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> norm2;
};

Rat rdot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

GramSchmidt gram_schmidt(const linalg::IntMat& b) {
  GramSchmidt g;
  size_t n = b.size();
  g.mu.assign(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rat> v(b[i].begin(), b[i].end());
    std::vector<Rat> orig = v;
    for (size_t j = 0; j < i; ++j) {
      g.mu[i][j] = rdot(orig, g.star[j]) / g.norm2[j];
      for (size_t k = 0; k < v.size(); ++k) v[k] -= g.mu[i][j] * g.star[j][k];
    }
    g.norm2.push_back(rdot(v, v));
    g.star.push_back(v);
  }
  return g;
}

// Squared determinant of the Gram matrix, which is invariant under unimodular
// row operations.
Rat gram_det(const linalg::IntMat& b) {
  Rat d = 1;
  for (auto& x : gram_schmidt(b).norm2) d *= x;
  return d;
}

linalg::IntMat random_basis(Rng& rng, size_t rows, size_t cols, long bound) {
  while (true) {
    linalg::IntMat b(rows, linalg::IntVec(cols));
    for (auto& r : b)
      for (auto& x : r) x = random_long(rng, -bound, bound);
    if (linalg::rank(b, cols) == rows) return b;
  }
}

SmallValueParams rational_params(long n, Rat xi, Rat nu) {
  SmallValueParams p;
  p.n = n;
  p.xi = {PolarPoint::rational(xi)};
  p.sigma = 0;
  p.tau = 0;
  p.beta = 2;
  p.nu = nu;
  return p;
}

} // namespace

TEST(Lll, ReducedAndSameLattice) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    size_t rows = 2 + trial % 5, cols = rows + trial % 3;
    linalg::IntMat b = random_basis(rng, rows, cols, trial < 30 ? 20 : 1000000);
    linalg::IntMat r = linalg::lll_reduce(b);
    ASSERT_EQ(r.size(), b.size());
    EXPECT_EQ(gram_det(r), gram_det(b));
    // every reduced row is an integer combination of the original rows: the
    // stacked matrix keeps the same rank and Gram determinant
    linalg::IntMat both = b;
    both.insert(both.end(), r.begin(), r.end());
    EXPECT_EQ(linalg::rank(both, cols), rows);
    GramSchmidt g = gram_schmidt(r);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < i; ++j) EXPECT_LE(abs(g.mu[i][j]), Rat(1, 2)) << trial;
    for (size_t k = 1; k < rows; ++k) {
      Rat m = g.mu[k][k - 1];
      EXPECT_GE(g.norm2[k], (Rat(99, 100) - m * m) * g.norm2[k - 1]) << trial;
    }
  }
}

TEST(Lll, ShortVectorInKnapsackLattice) {
  // (1,0,0,K a), (0,1,0,K b), (0,0,1,K c) with a x + b y + c z = 0 small
  Int K = 1000000;
  linalg::IntMat b = {{1, 0, 0, K * 12}, {0, 1, 0, K * 35}, {0, 0, 1, K * 47}};
  linalg::IntMat r = linalg::lll_reduce(b);
  EXPECT_EQ(r[0][3], 0);
  EXPECT_EQ(12 * r[0][0] + 35 * r[0][1] + 47 * r[0][2], 0);
  EXPECT_LE(linalg::max_norm(r[0]), 3);
}

TEST(SmallValues, ConstructsAtRationalPoint) {
  for (long n : {8L, 12L, 16L}) {
    SmallValueParams prm = rational_params(n, Rat(3) / 2, Rat(6) / 5);
    ConstructResult res = construct_small_value_poly(prm);
    ASSERT_EQ(res.status, ConstructStatus::FOUND) << n << " " << res.note;
    ASSERT_TRUE(res.P.has_value());
    EXPECT_LE(res.P->degree(), n);
    EXPECT_TRUE(res.report.verified()) << res.report.to_json().dump();
    numeric::PrecisionPolicy doubled{256, 32768};
    EXPECT_TRUE(verify_small_values(*res.P, prm, doubled).verified());
  }
  SmallValueParams prm = rational_params(12, Rat(3) / 2, Rat(3) / 2);
  ConstructResult res = construct_small_value_poly(prm);
  ASSERT_EQ(res.status, ConstructStatus::FOUND) << res.note;
  EXPECT_TRUE(verify_small_values(*res.P, prm, {256, 32768}).verified());
}

TEST(SmallValues, DerivativesAndTwoPoints) {
  SmallValueParams prm;
  prm.n = 24;
  prm.xi = {PolarPoint::rational(Rat(5) / 4), PolarPoint::root_of_unity(1, 5)};
  prm.sigma = Rat(1) / 5;  // N = 1
  prm.tau = Rat(1) / 5;    // J = 2
  prm.beta = 3;
  prm.nu = 1;
  EXPECT_EQ(prm.N(), 1);
  EXPECT_EQ(prm.J(), 2);
  EXPECT_EQ(prm.grid().size(), 4u);
  ConstructResult res = construct_small_value_poly(prm);
  ASSERT_EQ(res.status, ConstructStatus::FOUND) << res.note;
  EXPECT_TRUE(verify_small_values(*res.P, prm, {256, 32768}).verified());
}

TEST(SmallValues, TranscendentalPoint) {
  SmallValueParams prm;
  prm.n = 10;
  prm.xi = {PolarPoint::exp_real(Rat(1) / 3)};
  prm.beta = 2;
  prm.nu = Rat(6) / 5;
  ConstructResult res = construct_small_value_poly(prm);
  ASSERT_EQ(res.status, ConstructStatus::FOUND) << res.note;
  EXPECT_TRUE(verify_small_values(*res.P, prm, {256, 32768}).verified());

  prm.n = 16;
  prm.sigma = Rat(1) / 4;  // points 1, e^(1/3), e^(2/3)
  prm.beta = 3;
  res = construct_small_value_poly(prm);
  ASSERT_EQ(res.status, ConstructStatus::FOUND) << res.note;
  EXPECT_GT(res.P->degree(), 2);
  EXPECT_TRUE(verify_small_values(*res.P, prm, {256, 32768}).verified());
}

TEST(SmallValues, RejectsBadCandidates) {
  SmallValueParams prm = rational_params(4, Rat(3) / 2, 1);
  // the grid is {1, 3/2}, where (T - 1)(2T - 3) vanishes
  IntPolynomial good({3, -5, 2});
  EXPECT_TRUE(verify_small_values(good, prm).verified());
  EXPECT_TRUE(verify_small_values(IntPolynomial({3, -5, 2, 0, 0, 1}), prm).violated());
  EXPECT_TRUE(verify_small_values(IntPolynomial({-2, 1}), prm).violated());
  EXPECT_TRUE(verify_small_values(IntPolynomial(), prm).violated());
  prm.beta = Rat(1) / 10;  // log 5 > 4^(1/10)
  EXPECT_TRUE(verify_small_values(good, prm).violated());
}

TEST(SmallValues, UnreachableTargetIsNotFound) {
  SmallValueParams prm = rational_params(8, Rat(3) / 2, 6);
  ConstructResult res = construct_small_value_poly(prm, {128, 4096});
  EXPECT_EQ(res.status, ConstructStatus::NOT_FOUND);
  EXPECT_FALSE(res.P.has_value());
  EXPECT_FALSE(res.note.empty());
  // within reach of the precision but not of the degree and height budget
  SmallValueParams tight = rational_params(4, Rat(3) / 2, 3);
  tight.xi = {PolarPoint::exp_real(Rat(1) / 3)};
  tight.beta = Rat(1) / 2;
  EXPECT_EQ(construct_small_value_poly(tight).status, ConstructStatus::NOT_FOUND);
}

TEST(SmallValues, WarningsOutsideExistenceRange) {
  SmallValueParams prm = rational_params(8, Rat(3) / 2, 1);
  EXPECT_TRUE(prm.warnings().empty());
  prm.sigma = Rat(1) / 2;
  prm.tau = Rat(1) / 2;
  EXPECT_EQ(prm.warnings().size(), 1u);
  prm.beta = 1;
  EXPECT_EQ(prm.warnings().size(), 2u);
  prm.tau = 3;
  EXPECT_THROW(prm.validate(), Error);
}
