#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smallval/groups.hpp"

using namespace smallval;
using namespace smallval::groups;

namespace {

const RationalGroup Q;

ElementSet<RationalGroup> qset(std::initializer_list<long> v) {
  std::vector<Rat> out;
  for (long x : v) out.emplace_back(x);
  return ElementSet<RationalGroup>(Q, out);
}

std::vector<Int> ints(std::initializer_list<long> v) { return std::vector<Int>(v.begin(), v.end()); }

Rat random_small_rational(Rng& rng) {
  static const std::vector<long> ps = {2, 3, 5};
  Rat v = 1;
  for (long p : ps) v *= rpow(Rat(p), random_long(rng, -3, 3));
  if (random_long(rng, 0, 1)) v = -v;
  return v;
}

} // namespace

TEST(DenNum, Examples) {
  PrimeSet A(ints({2, 3}));
  EXPECT_EQ(den_num(Q, A, Rat(2), Rat(8)), std::make_pair(Int(3), Int(1)));
  EXPECT_EQ(den_num(Q, A, Rat(4), Rat(8)), std::make_pair(Int(3), Int(2)));
  EXPECT_EQ(den_num(Q, A, Rat(2), Rat(-2)), std::make_pair(Int(2), Int(2)));
  try {
    den_num(Q, A, Rat(2), Rat(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_NE(std::string(e.what()).find("not A-equivalent"), std::string::npos);
  }
  EXPECT_THROW(den_num(Q, A, Rat(-1), Rat(2)), Error);
  // 2^5 = 32 needs the prime 5 in A
  EXPECT_THROW(den_num(Q, A, Rat(2), Rat(32)), Error);
  EXPECT_EQ(den_num(Q, PrimeSet(ints({2, 5})), Rat(2), Rat(32)), std::make_pair(Int(5), Int(1)));
}

TEST(DenNum, AgreesWithSearch) {
  Rng rng(11);
  for (int it = 0; it < 300; ++it) {
    Rat x = random_small_rational(rng);
    if (Q.is_torsion(x)) continue;
    Rat y = random_small_rational(rng);
    auto rel = Q.relation(x, y);
    auto ref = oracle::relation_by_search(x, y, 6, 20);
    ASSERT_EQ(rel.has_value(), ref.has_value()) << x << " " << y;
    if (rel) {
      EXPECT_EQ(*rel, *ref) << x << " " << y;
    }
  }
}

TEST(DenNum, DivisibilityAndShift) {
  // x = b^Q0, y = +-b^P0 gives x^P0 = (+-y)^Q0 with coprime P0, Q0
  Rng rng(9);
  PrimeSet A(ints({2, 3, 5, 7}));
  for (int it = 0; it < 200; ++it) {
    Rat b = random_small_rational(rng);
    if (Q.is_torsion(b)) continue;
    Int P0 = A.primes()[random_long(rng, 0, 3)], Q0 = A.primes()[random_long(rng, 0, 3)];
    if (random_long(rng, 0, 1)) P0 *= A.primes()[random_long(rng, 0, 3)];
    Rat x = rpow(b, Q0.get_si()), y = rpow(b, P0.get_si());
    if (random_long(rng, 0, 1)) y = -y;
    auto rel = equivalence_relation(Q, A, x, y);
    // a witness exists with products P0 * 2, Q0 * 2 (the squares kill signs)
    Int P = P0 * 2, Qp = Q0 * 2;
    ASSERT_EQ(Q.pow(x, P), Q.pow(y, Qp));
    ASSERT_TRUE(rel);
    auto [m, n] = *rel;
    EXPECT_GT(m, 0);
    EXPECT_EQ(P % m, 0);
    EXPECT_EQ(Qp % n, 0);
    EXPECT_EQ(Rat(m) / n, Rat(P) / Qp);
    for (auto& q : A.primes()) {
      if (n % q == 0) continue;
      auto [m2, n2] = den_num(Q, A, x, Q.pow(y, q));
      EXPECT_EQ(n2, n);
      EXPECT_EQ(m2, q * m);
    }
  }
}

TEST(Reach, Examples) {
  PrimeSet A(ints({2, 3}));
  auto E = qset({2, -2, 8});
  auto rs = reach_sets(Q, A, Rat(2), E, 1);
  EXPECT_EQ(rs.C.items(), qset({-2, 2}).items());
  EXPECT_EQ(reach_sets(Q, A, Rat(2), E, 0).C.items(), qset({2}).items());
  EXPECT_TRUE(reach_sets(Q, A, Rat(3), E, 0).C.empty());
  EXPECT_EQ(prime_image(Q, A, qset({2})).items(), qset({4, 8}).items());
  EXPECT_EQ(rs.D.items(), qset({-8, 4, 8}).items());
  // 8^2 = 4^3 puts 8 in C_1(4)
  EXPECT_TRUE(in_reach(Q, A, Rat(4), Rat(8), 1));
  EXPECT_FALSE(in_reach(Q, A, Rat(2), Rat(8), 2));
}

TEST(Reach, AgreesWithTupleOracle) {
  Rng rng(3);
  for (int it = 0; it < 400; ++it) {
    std::vector<Int> ps = {2, 3, 5, 7};
    std::shuffle(ps.begin(), ps.end(), rng);
    ps.resize(random_long(rng, 2, 4));
    PrimeSet A(ps);
    Rat x = random_small_rational(rng);
    if (Q.is_torsion(x)) continue;
    // bias y towards the class of x
    Rat y = random_long(rng, 0, 1) ? random_small_rational(rng)
                                   : rpow(x, random_long(rng, 1, 4)) * (random_long(rng, 0, 1) ? 1 : -1);
    if (random_long(rng, 0, 2) == 0) {
      bool exact = false;
      Int r = floor_root(abs(x.get_num()), 2, &exact);
      if (exact && x.get_den() == 1) y = Rat(r);
    }
    for (unsigned k = 0; k <= 2; ++k)
      EXPECT_EQ(in_reach(Q, A, x, y, k), oracle::reach_by_tuples(Q, A.primes(), x, y, k)) << x << " " << y << " k=" << k;
  }
}

TEST(Reach, OtherGroupsAgreeWithTupleOracle) {
  Rng rng(4);
  LatticeGroup Z(2);
  AdditiveRationals Qa;
  PrimeSet A(ints({2, 3, 5}));
  for (int it = 0; it < 300; ++it) {
    LatticeGroup::Element x = {random_long(rng, -4, 4), random_long(rng, -4, 4)};
    if (Z.is_torsion(x)) continue;
    long c = std::vector<long>{1, 2, 3, 4, 6, 9, 10}[random_long(rng, 0, 6)];
    long d = std::vector<long>{1, 2, 3, 5}[random_long(rng, 0, 3)];
    LatticeGroup::Element y = random_long(rng, 0, 2) ? LatticeGroup::Element{x[0] * c, x[1] * c}
                                                     : LatticeGroup::Element{random_long(rng, -8, 8), random_long(rng, -8, 8)};
    if (random_long(rng, 0, 1) && x[0] % d == 0 && x[1] % d == 0) y = {x[0] / d * c, x[1] / d * c};
    Rat qx = Rat(random_long(rng, 1, 6)) / random_long(rng, 1, 6), qy = qx * c / d;
    for (unsigned k = 0; k <= 2; ++k) {
      EXPECT_EQ(in_reach(Z, A, x, y, k), oracle::reach_by_tuples(Z, A.primes(), x, y, k));
      EXPECT_EQ(in_reach(Qa, A, qx, qy, k), oracle::reach_by_tuples(Qa, A.primes(), qx, qy, k)) << qx << " " << qy << " k=" << k;
    }
  }
}

TEST(Reach, AdditiveRationals) {
  AdditiveRationals Qa;
  PrimeSet A(ints({2, 3}));
  EXPECT_EQ(den_num(Qa, A, Rat(1), Rat(2, 3)), std::make_pair(Int(2), Int(3)));
  EXPECT_THROW(den_num(Qa, A, Rat(1), Rat(5)), Error);
  EXPECT_THROW(den_num(Qa, A, Rat(1), Rat(-2)), Error);
  EXPECT_THROW(den_num(Qa, A, Rat(0), Rat(1)), Error);
}

TEST(Reach, CountingBoundsHoldExactly) {
  Rng rng(21);
  for (int it = 0; it < 120; ++it) {
    std::vector<Int> ps = {2, 3, 5, 7, 11, 13};
    std::shuffle(ps.begin(), ps.end(), rng);
    ps.resize(random_long(rng, 2, 6));
    PrimeSet A(ps);
    auto cand = random_rational_candidates(rng, random_long(rng, 1, 14));
    ElementSet<RationalGroup> E(Q, cand);
    for (auto& x : E.items()) {
      if (Q.is_torsion(x)) continue;
      for (unsigned k = 0; k <= 3; ++k) {
        EXPECT_TRUE(reach_lower_bound(Q, A, x, E, k).verified());
        EXPECT_TRUE(reach_overlap_bound(Q, A, x, E, k).verified());
      }
    }
  }
}

TEST(Partition, Example) {
  PrimeSet A(ints({2, 3, 5, 7, 11}));
  auto E = qset({2});
  auto F = qset({4, 8, 32, 128, 2048});
  EXPECT_TRUE(partition_size_hypothesis(F.size(), A.size(), 0));
  EXPECT_FALSE(partition_size_hypothesis(6, A.size(), 0));
  auto res = partition(Q, A, E, F, 0);
  ASSERT_EQ(res.r(), 1u);
  EXPECT_EQ(res.E_blocks[0].items(), E.items());
  EXPECT_EQ(res.F_blocks[0].size(), 5u);
  EXPECT_TRUE(res.remainder.empty());
  BoundReport rep = verify_partition(Q, A, E, F, 0, res);
  EXPECT_EQ(rep.verdict, Verdict::VERIFIED);
  // binding comparison: 5/2 <= 5
  EXPECT_TRUE(rep.lhs.contains(Rat(5, 2)));
  EXPECT_TRUE(rep.rhs.contains(Rat(5)));
}

TEST(Partition, Preconditions) {
  PrimeSet A(ints({2, 3, 5, 7, 11}));
  auto F = qset({4, 8, 32, 128, 2048});
  auto expect_pre = [](auto&& f) {
    try {
      f();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
  };
  expect_pre([&] { partition(Q, A, ElementSet<RationalGroup>(Q), F, 0); });
  expect_pre([&] { partition(Q, A, qset({3}), F, 0); });
  expect_pre([&] { partition(Q, A, qset({-1}), F, 0); });
  expect_pre([&] { partition(Q, A, qset({2}), F, 4); });
  expect_pre([&] { partition(Q, A, qset({2}), qset({4, 8, 32, 128, 2048, 5}), 0); });
  EXPECT_THROW(PrimeSet(ints({2, 4})), Error);
  EXPECT_THROW(PrimeSet(ints({2})), Error);
}

TEST(Partition, CorruptionsAreViolated) {
  PrimeSet A(ints({2, 3, 5, 7, 11}));
  auto E = qset({2});
  auto F = qset({4, 8, 32, 128, 2048});
  auto res = partition(Q, A, E, F, 0);

  // an element of F_1 replaced by an element outside F
  auto bad = res;
  auto items = bad.F_blocks[0].items();
  items.back() = Rat(3);
  bad.F_blocks[0] = ElementSet<RationalGroup>(Q, items);
  EXPECT_EQ(verify_partition(Q, A, E, F, 0, bad).verdict, Verdict::VIOLATED);

  // an element of F_1 moved to the remainder: still a valid partition
  bad = res;
  items = bad.F_blocks[0].items();
  bad.remainder.insert(items.back());
  items.pop_back();
  bad.F_blocks[0] = ElementSet<RationalGroup>(Q, items);
  EXPECT_EQ(verify_partition(Q, A, E, F, 0, bad).verdict, Verdict::VERIFIED);

  // |F_1| = 2 < 5/2 breaks c)
  items.resize(2);
  bad.F_blocks[0] = ElementSet<RationalGroup>(Q, items);
  for (auto& x : res.F_blocks[0].items())
    if (!bad.F_blocks[0].contains(x)) bad.remainder.insert(x);
  EXPECT_EQ(verify_partition(Q, A, E, F, 0, bad).verdict, Verdict::VIOLATED);

  // an E-block leaving C_l(x_1)
  bad = res;
  bad.E_blocks[0].insert(Rat(4));
  EXPECT_EQ(verify_partition(Q, A, E, F, 0, bad).verdict, Verdict::VIOLATED);

  // no blocks for a non-empty E
  PartitionResult<RationalGroup> empty(Q);
  empty.remainder = F;
  EXPECT_EQ(verify_partition(Q, A, E, F, 0, empty).verdict, Verdict::VIOLATED);
}

TEST(Partition, MovedIntoWrongBlockIsViolated) {
  PrimeSet A(ints({2, 3, 5, 7, 11, 13, 17}));  // cap 10 at l = 0
  auto E = qset({2});
  auto F = qset({4, 8, 32, 128, 2048, 8192, 131072, 5});
  auto res = partition(Q, A, E, F, 0);
  ASSERT_EQ(res.remainder.items(), qset({5}).items());
  auto bad = res;
  bad.remainder = ElementSet<RationalGroup>(Q);
  bad.F_blocks[0].insert(Rat(5));
  BoundReport rep = verify_partition(Q, A, E, F, 0, bad);
  EXPECT_EQ(rep.verdict, Verdict::VIOLATED);
  EXPECT_NE(rep.note.find("O(E_i)"), std::string::npos);
}

TEST(Partition, RandomInstancesVerify) {
  Rng rng(77);
  int nontrivial = 0, runs = 0;
  for (int it = 0; it < 200; ++it) {
    std::vector<Int> pool = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t a = it < 100 ? random_long(rng, 5, 8) : random_long(rng, 9, 14);
    pool.resize(a);
    PrimeSet A(pool);
    unsigned l = random_long(rng, 0, std::min<long>(2, a - 2));
    while (l > 0 && partition_size_cap(a, l) < a) --l;
    if (partition_size_cap(a, l) < a) continue;
    auto cand = random_rational_candidates(rng, 30);
    std::vector<Rat> extras;
    for (int i = 0; i < 20; ++i) extras.push_back(Rat(random_long(rng, 2, 500), random_long(rng, 1, 50)));
    auto [E, F] = greedy_instance(Q, A, l, cand, extras);
    if (E.empty()) continue;
    ++runs;
    auto res = partition(Q, A, E, F, l);
    if (res.r() > 1 || res.E_blocks[0].size() > 1) ++nontrivial;
    BoundReport rep = verify_partition(Q, A, E, F, l, res);
    EXPECT_EQ(rep.verdict, Verdict::VERIFIED) << rep.to_json().dump();
  }
  EXPECT_GT(runs, 150);
  EXPECT_GT(nontrivial, 20);
}

TEST(Partition, LatticeMatchesRationals) {
  // Z^3 with basis (2, 3, 5) against Q* on the products 2^i 3^j 5^k
  Rng rng(8);
  LatticeGroup Z(3, ints({2, 3, 5}));
  int compared = 0;
  for (int it = 0; it < 60; ++it) {
    std::vector<Int> pool = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(random_long(rng, 5, 9));
    PrimeSet A(pool);
    LatticeGroup::Element base = {random_long(rng, -2, 2), random_long(rng, -2, 2), random_long(rng, -1, 1)};
    if (Z.is_torsion(base)) continue;
    std::vector<LatticeGroup::Element> cand, extras;
    for (int i = 0; i < 12; ++i) {
      long e = std::vector<long>{1, 2, 3, 4, 6, 9, -1, -2}[random_long(rng, 0, 7)];
      cand.push_back(Z.pow(base, e));
    }
    for (int i = 0; i < 10; ++i) extras.push_back({random_long(rng, -3, 3), random_long(rng, -3, 3), random_long(rng, -3, 3)});
    auto [EZ, FZ] = greedy_instance(Z, A, 0, cand, extras);
    if (EZ.empty()) continue;
    auto map = [&](const ElementSet<LatticeGroup>& S) {
      std::vector<Rat> v;
      for (auto& e : S.items()) v.push_back(Z.to_rational(e));
      return ElementSet<RationalGroup>(Q, v);
    };
    auto EQ = map(EZ), FQ = map(FZ);
    auto rz = partition(Z, A, EZ, FZ, 0);
    auto rq = partition(Q, A, EQ, FQ, 0);
    ASSERT_EQ(rz.r(), rq.r());
    for (size_t i = 0; i < rz.r(); ++i) {
      EXPECT_EQ(Z.to_rational(rz.anchors[i]), rq.anchors[i]);
      EXPECT_EQ(rz.levels[i], rq.levels[i]);
      EXPECT_EQ(map(rz.E_blocks[i]).items(), rq.E_blocks[i].items());
      EXPECT_EQ(map(rz.F_blocks[i]).items(), rq.F_blocks[i].items());
    }
    EXPECT_EQ(map(rz.remainder).items(), rq.remainder.items());
    EXPECT_TRUE(verify_partition(Z, A, EZ, FZ, 0, rz).verified());
    for (auto& x : EZ.items())
      for (unsigned k = 0; k <= 2; ++k)
        EXPECT_EQ(map(reach_sets(Z, A, x, EZ, k).C).items(), reach_sets(Q, A, Z.to_rational(x), EQ, k).C.items());
    ++compared;
  }
  EXPECT_GT(compared, 30);
}
