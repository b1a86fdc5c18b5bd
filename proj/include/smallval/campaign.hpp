#pragma once

// Verification campaigns. Every property the library claims is a suite with a
// claim id; a suite draws its instances from a per-instance seed, so results do
// not depend on the thread count or on which other suites run alongside.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "smallval/auxpoly.hpp"
#include "smallval/combinat.hpp"
#include "smallval/cyclo.hpp"
#include "smallval/gcdbounds.hpp"
#include "smallval/groups.hpp"
#include "smallval/kronecker.hpp"
#include "smallval/pipeline.hpp"
#include "smallval/polyz.hpp"
#include "smallval/report.hpp"

namespace smallval::campaign {

using numeric::PolarPoint;
using numeric::PrecisionPolicy;
using polyz::IntPolynomial;

struct SuiteConfig {
  std::uint64_t seed = 1;
  long instances = 0;            // 0 keeps each suite's default
  unsigned long max_order = 60;  // range of the exhaustive root-of-unity suites
  PrecisionPolicy policy;
};

// A suite maps an instance index and its generator to the reports it produces.
struct Suite {
  std::string id;
  std::string description;
  long default_instances = 1;
  bool fixed = false;  // exhaustive or hand-built: --instances does not apply
  std::function<std::vector<BoundReport>(long, Rng&, const SuiteConfig&)> run;

  long count(const SuiteConfig& cfg) const { return fixed || cfg.instances <= 0 ? default_instances : cfg.instances; }
};

namespace detail {

// An exact property folded in as "number of failures <= 0".
inline void exact(BoundReport& rep, bool ok, const std::string& why) {
  rep.check(Real(ok ? 0 : 1), Real(0));
  if (!ok) rep.fail_with(why);
}

inline Rng instance_rng(std::uint64_t seed, const std::string& id, long index) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

// Redraws while the operation rejects the instance's hypotheses.
template <class F>
std::vector<BoundReport> admissible(Rng& rng, F&& f, int attempts = 2000) {
  for (int k = 0; k < attempts; ++k) {
    try {
      return f(rng);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Precondition && e.kind() != ErrorKind::Hypothesis) throw;
    }
  }
  fail(ErrorKind::Internal, "no admissible instance within " + std::to_string(attempts) + " draws");
}

inline IntPolynomial random_poly(Rng& rng, long deg, long bound) {
  std::vector<Int> c;
  for (long k = 0; k <= deg; ++k) c.emplace_back(random_long(rng, -bound, bound));
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(c);
}

inline IntPolynomial random_torsion_free(Rng& rng, long deg, long bound) {
  while (true) {
    IntPolynomial p = random_poly(rng, deg, bound);
    if (p.degree() == deg && !cyclo::has_torsion_or_zero_root(p)) return p;
  }
}

inline gcdbounds::Exponents random_exponents(Rng& rng, unsigned long max_a, size_t count) {
  gcdbounds::Exponents A;
  while (A.size() < count) {
    unsigned long a = random_long(rng, 1, static_cast<long>(max_a));
    if (std::find(A.begin(), A.end(), a) == A.end()) A.push_back(a);
  }
  return A;
}

inline Rat random_rat(Rng& rng, long num, long den) { return Rat(random_long(rng, -num, num)) / random_long(rng, 1, den); }

inline PolarPoint pick(Rng& rng, const std::vector<std::string>& pool) {
  return PolarPoint::parse(pool[random_long(rng, 0, static_cast<long>(pool.size()) - 1)]);
}

const std::vector<std::string> point_pool = {"3/2", "-2/3", "5/4", "1/3", "i*3/2", "zeta(1/5)*2", "exp(1/3)", "zeta(2/9)*9/10", "-7/5"};

// P^[j](re + i im) over Q(i) by Horner.
inline std::pair<Rat, Rat> gaussian_eval(const IntPolynomial& p, const Rat& re, const Rat& im, size_t j) {
  IntPolynomial d = p.divided_derivative(j);
  Rat ar = 0, ai = 0;
  for (size_t k = d.coeffs().size(); k-- > 0;) {
    Rat nr = ar * re - ai * im + d.coeffs()[k];
    Rat ni = ar * im + ai * re;
    ar = nr;
    ai = ni;
  }
  return {ar, ai};
}

inline nlohmann::json ints_json(const std::vector<Int>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& x : v) j.push_back(to_string(x));
  return j;
}

// Scans [1,N]^m directly; pred sees a.i.
template <class Pred>
long grid_scan(long m, long N, const std::vector<long>& a, Pred pred) {
  std::vector<long> i(m, 1);
  long count = 0;
  while (true) {
    long s = 0;
    for (long k = 0; k < m; ++k) s += a[k] * i[k];
    if (pred(s)) ++count;
    long k = 0;
    while (k < m && i[k] == N) i[k++] = 1;
    if (k == m) return count;
    ++i[k];
  }
}

// ---- polynomials ----

inline std::vector<BoundReport> divided_derivative_composition(long, Rng& rng, const SuiteConfig&) {
  IntPolynomial p = random_poly(rng, random_long(rng, 0, 50), 1000);
  size_t j = random_long(rng, 0, 12), k = random_long(rng, 0, 12);
  BoundReport rep("polyz.divided_derivative_composition", {{"P", polyz::to_json(p)}, {"j", j}, {"k", k}});
  exact(rep, p.divided_derivative(j).divided_derivative(k) == binomial(j + k, j) * p.divided_derivative(j + k),
        "(P^[j])^[k] differs from C(j+k, j) P^[j+k]");
  return {rep.finish()};
}

inline std::vector<BoundReport> gelfond_product(long, Rng& rng, const SuiteConfig& cfg) {
  long s = random_long(rng, 1, 5);
  IntPolynomial prod = IntPolynomial::constant(1);
  Rat hprod = 1;
  nlohmann::json parts = nlohmann::json::array();
  for (long k = 0; k < s; ++k) {
    IntPolynomial q = Int(random_long(rng, 1, 4)) * random_poly(rng, random_long(rng, 0, 20), 50);
    parts.push_back(polyz::to_json(q));
    prod *= q;
    hprod *= q.height();
  }
  BoundReport rep("polyz.gelfond_product", {{"factors", parts}});
  Real d(prod.degree()), h(prod.height());
  rep.check(exp(-d) * h, Real(hprod), Relation::LE, cfg.policy);
  rep.check(Real(hprod), exp(d) * h, Relation::LE, cfg.policy);
  return {rep.finish()};
}

inline std::vector<BoundReport> gcd_divides(long, Rng& rng, const SuiteConfig&) {
  IntPolynomial shared = random_poly(rng, random_long(rng, 0, 3), 5);
  std::vector<IntPolynomial> in;
  for (long k = random_long(rng, 2, 4); k > 0; --k) in.push_back(shared * random_poly(rng, random_long(rng, 0, 4), 6));
  IntPolynomial g = polyz::gcd_set(in);
  nlohmann::json inj = nlohmann::json::array();
  for (auto& p : in) inj.push_back(polyz::to_json(p));
  BoundReport rep("polyz.gcd_divides", {{"inputs", inj}, {"gcd", polyz::to_json(g)}});
  for (auto& p : in) exact(rep, polyz::divides(g, p), "gcd does not divide " + p.to_text());
  for (auto& [f, e] : polyz::factor_irreducible(in[0]).factors) {
    IntPolynomial fe = f.pow(e);
    bool common = std::all_of(in.begin(), in.end(), [&](const IntPolynomial& p) { return polyz::divides(fe, p); });
    if (common) exact(rep, polyz::divides(fe, g), "common factor " + fe.to_text() + " does not divide the gcd");
  }
  return {rep.finish()};
}

inline std::vector<BoundReport> factor_roundtrip(long index, Rng& rng, const SuiteConfig&) {
  IntPolynomial p = IntPolynomial::constant(random_long(rng, 1, 12) * (index % 2 ? 1 : -1));
  for (long k = random_long(rng, 1, 3); k > 0; --k) p *= random_poly(rng, random_long(rng, 1, 3), 6).pow(random_long(rng, 1, 2));
  polyz::Factorization f = polyz::factor_irreducible(p);
  BoundReport rep("polyz.factor_roundtrip", {{"P", polyz::to_json(p)}, {"factors", f.factors.size()}});
  exact(rep, f.expand() == p, "factors do not multiply back to P");
  for (size_t i = 0; i < f.factors.size(); ++i) {
    const IntPolynomial& q = f.factors[i].first;
    exact(rep, q.content() == 1 && q.leading() > 0, q.to_text() + " is not primitive with positive leading coefficient");
    if (q.degree() <= 8) exact(rep, polyz::irreducible_by_interpolation(q), q.to_text() + " has a proper factor");
    for (size_t j = 0; j < i; ++j) exact(rep, q != f.factors[j].first, "repeated factor " + q.to_text());
  }
  return {rep.finish()};
}

// ---- enclosures ----

inline std::vector<BoundReport> containment(long index, Rng& rng, const SuiteConfig&) {
  IntPolynomial p = random_poly(rng, random_long(rng, 0, 12), 1000);
  Rat re = random_rat(rng, 2000, 997), im = index % 3 == 0 ? Rat(0) : random_rat(rng, 2000, 997);
  size_t j = random_long(rng, 0, 3);
  auto enc = numeric::eval_dd_enclosure(p, ComplexEnclosure::of(re, im, 96), j);
  auto [er, ei] = gaussian_eval(p, re, im, j);
  BoundReport rep("numeric.containment", {{"P", polyz::to_json(p)}, {"re", to_string(re)}, {"im", to_string(im)}, {"j", j}});
  exact(rep, enc.contains(er, ei), "exact value outside the enclosure");
  return {rep.finish()};
}

inline std::vector<BoundReport> height_mahler(long, Rng& rng, const SuiteConfig& cfg) {
  IntPolynomial p = random_poly(rng, random_long(rng, 1, 15), 200).primitive_part();
  RealInterval m = numeric::mahler_measure(p, cfg.policy);
  Real mm = Real::from([m](numeric::Prec) { return m; });
  Real h(p.height()), s(p.degree());
  BoundReport rep("numeric.height_mahler", {{"P", polyz::to_json(p)}});
  rep.check(exp(-s) * h, mm, Relation::LE, cfg.policy);
  rep.check(mm, exp(s) * h, Relation::LE, cfg.policy);
  return {rep.finish()};
}

inline std::vector<BoundReport> mahler_multiplicative(long index, Rng& rng, const SuiteConfig& cfg) {
  IntPolynomial a = random_poly(rng, random_long(rng, 1, 7), 30);
  IntPolynomial b = index % 4 == 0 ? a : random_poly(rng, random_long(rng, 1, 7), 30);
  BoundReport rep("numeric.mahler_multiplicative", {{"P", polyz::to_json(a)}, {"Q", polyz::to_json(b)}});
  RealInterval ab = numeric::mahler_measure(a * b, cfg.policy);
  RealInterval prod = numeric::mahler_measure(a, cfg.policy) * numeric::mahler_measure(b, cfg.policy);
  exact(rep, ab.intersects(prod), "M(PQ) and M(P) M(Q) have disjoint enclosures");
  return {rep.finish()};
}

inline std::vector<BoundReport> delta_E_permutation(long, Rng& rng, const SuiteConfig&) {
  std::vector<ComplexEnclosure> pts;
  for (int k = 0; k < 5; ++k) pts.push_back(ComplexEnclosure::of(random_rat(rng, 2000, 997), random_rat(rng, 2000, 997), 80));
  RealInterval a = numeric::delta_E(pts);
  std::shuffle(pts.begin(), pts.end(), rng);
  RealInterval b = numeric::delta_E(pts);
  BoundReport rep("numeric.delta_E_permutation", {{"points", pts.size()}});
  exact(rep, a.lo() == b.lo() && a.hi() == b.hi(), "enclosure changed under permutation");
  return {rep.finish()};
}

// ---- roots of unity ----

inline std::vector<BoundReport> cyclotomic_degree(long index, Rng&, const SuiteConfig&) {
  unsigned long n = index + 1;
  IntPolynomial c = cyclo::cyclotomic_poly(n);
  BoundReport rep("cyclo.cyclotomic_degree", {{"n", n}});
  exact(rep, Int(c.degree()) == euler_phi(Int(n)), "degree differs from phi(n)");
  exact(rep, polyz::divides(c, IntPolynomial::monomial(1, n) - IntPolynomial::constant(1)), "does not divide T^n - 1");
  return {rep.finish()};
}

inline std::vector<BoundReport> split_maximal(long, Rng& rng, const SuiteConfig&) {
  IntPolynomial p = random_poly(rng, random_long(rng, 0, 4), 20);
  for (long k = random_long(rng, 0, 4); k > 0; --k) p *= cyclo::cyclotomic_poly(random_long(rng, 1, 30)).pow(random_long(rng, 1, 3));
  p *= IntPolynomial::x().pow(random_long(rng, 0, 2));
  unsigned long t = random_long(rng, 1, 3);
  cyclo::CycloSplit s = cyclo::cyclo_split(p, t);
  BoundReport rep("cyclo.split_maximal", {{"P", polyz::to_json(p)}, {"t", t}, {"split", s.to_json()}});
  exact(rep, s.expand() == p, "T^r Phi^t P0 differs from P");
  exact(rep, s.p0.constant_term() != 0, "P0 vanishes at 0");
  exact(rep, cyclo::is_cyclotomic(s.phi), "Phi is not a product of cyclotomic polynomials");
  for (unsigned long n = 1; n <= 60; ++n) {
    IntPolynomial bigger = (cyclo::cyclotomic_poly(n) * s.phi).pow(t) * IntPolynomial::monomial(1, s.r);
    exact(rep, !polyz::divides(bigger, p), "(Phi_" + std::to_string(n) + " Phi)^t still divides P");
  }
  return {rep.finish()};
}

inline std::vector<BoundReport> dichotomy(long, Rng& rng, const SuiteConfig& cfg) {
  size_t m = random_long(rng, 1, 2);
  long N = random_long(rng, 1, 2);
  IntPolynomial phi = cyclo::cyclotomic_poly(random_long(rng, 1, 8));
  if (random_long(rng, 0, 1)) phi *= cyclo::cyclotomic_poly(random_long(rng, 1, 6));
  long d = phi.degree();
  Rat cap = 1 / rpow(Rat(8 * long(m) * d * d * d * d * N), 2 * long(m) * d);
  Real delta(cap / 7);
  std::vector<PolarPoint> xi;
  for (size_t j = 0; j < m; ++j) {
    long kind = random_long(rng, 0, 2);
    if (kind == 0)
      xi.push_back(PolarPoint(Rat(random_long(rng, 1, 40)) / 20, 0, Rat(random_long(rng, 0, 11)) / 12, 0));
    else if (kind == 1)
      xi.push_back(PolarPoint::root_of_unity(random_long(rng, 0, 9), 10));
    else
      xi.push_back(PolarPoint(1 + Rat(1) / ipow(Int(10), 400), 0, Rat(random_long(rng, 0, 5)) / 6, 0));
  }
  cyclo::DichotomyResult r = cyclo::cyclo_dichotomy(d, N, delta, phi, xi, cfg.policy);
  PrecisionPolicy doubled{2 * cfg.policy.initial_bits, 2 * cfg.policy.max_bits};
  std::vector<BoundReport> out = {r.report, cyclo::dichotomy_report(r, d, N, delta, phi, xi, doubled)};
  out.back().params["reverified_at"] = doubled.initial_bits;
  if (r.branch == cyclo::Branch::NEARBY_ROOT) out.push_back(cyclo::nearby_root_exclusivity(r, d, N, delta, phi, xi, cfg.policy));
  return out;
}

// ---- groups ----

inline Rat random_small_rational(Rng& rng) {
  Rat v = 1;
  for (long p : {2L, 3L, 5L}) v *= rpow(Rat(p), random_long(rng, -3, 3));
  return random_long(rng, 0, 1) ? Rat(-v) : v;
}

inline std::vector<BoundReport> den_num(long, Rng& rng, const SuiteConfig&) {
  // x = b^Q0, y = +-b^P0 satisfy x^(2 P0) = y^(2 Q0)
  const groups::RationalGroup Q;
  groups::PrimeSet A({Int(2), Int(3), Int(5), Int(7)});
  Rat b;
  do b = random_small_rational(rng);
  while (Q.is_torsion(b));
  Int P0 = A.primes()[random_long(rng, 0, 3)], Q0 = A.primes()[random_long(rng, 0, 3)];
  if (random_long(rng, 0, 1)) P0 *= A.primes()[random_long(rng, 0, 3)];
  Rat x = rpow(b, Q0.get_si()), y = rpow(b, P0.get_si());
  if (random_long(rng, 0, 1)) y = -y;
  Int P = P0 * 2, Qp = Q0 * 2;
  BoundReport rep("groups.den_num", {{"x", to_string(x)}, {"y", to_string(y)}, {"p_product", to_string(P)}, {"q_product", to_string(Qp)}});
  auto rel = groups::equivalence_relation(Q, A, x, y);
  exact(rep, rel.has_value(), "x and y are not found equivalent");
  if (!rel) return {rep.finish()};
  auto [m, n] = *rel;
  exact(rep, m > 0 && P % m == 0, "num does not divide the p-product");
  exact(rep, Qp % n == 0, "den does not divide the q-product");
  exact(rep, Rat(m) / n == Rat(P) / Qp, "num/den differs from the ratio of the products");
  for (auto& q : A.primes()) {
    if (n % q == 0) continue;
    auto [m2, n2] = groups::den_num(Q, A, x, Q.pow(y, q));
    exact(rep, n2 == n && m2 == q * m, "den/num of y^q not (den, q num) for q = " + to_string(q));
  }
  return {rep.finish()};
}

template <bool Lower>
std::vector<BoundReport> reach_bound(long, Rng& rng, const SuiteConfig&) {
  const groups::RationalGroup Q;
  std::vector<Int> ps = {2, 3, 5, 7, 11, 13};
  std::shuffle(ps.begin(), ps.end(), rng);
  ps.resize(random_long(rng, 2, 6));
  groups::PrimeSet A(ps);
  groups::ElementSet<groups::RationalGroup> E(Q, groups::random_rational_candidates(rng, random_long(rng, 1, 14)));
  BoundReport rep(Lower ? "groups.reach_lower_bound" : "groups.reach_overlap_bound", {{"A", A.to_json()}, {"E", E.size()}});
  for (auto& x : E.items()) {
    if (Q.is_torsion(x)) continue;
    for (unsigned k = 0; k <= 3; ++k)
      rep.merge(Lower ? groups::reach_lower_bound(Q, A, x, E, k) : groups::reach_overlap_bound(Q, A, x, E, k));
  }
  return {rep.finish()};
}

inline std::vector<BoundReport> partition(long, Rng& rng, const SuiteConfig&) {
  const groups::RationalGroup Q;
  while (true) {
    std::vector<Int> pool = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t a = random_long(rng, 5, 8);
    pool.resize(a);
    groups::PrimeSet A(pool);
    unsigned l = random_long(rng, 0, std::min<long>(2, a - 2));
    while (l > 0 && groups::partition_size_cap(a, l) < a) --l;
    if (groups::partition_size_cap(a, l) < a) continue;
    auto cand = groups::random_rational_candidates(rng, 30);
    std::vector<Rat> extras;
    for (int i = 0; i < 20; ++i) extras.push_back(Rat(random_long(rng, 2, 500)) / random_long(rng, 1, 50));
    auto [E, F] = groups::greedy_instance(Q, A, l, cand, extras);
    if (E.empty()) continue;
    auto res = groups::partition(Q, A, E, F, l);
    std::vector<BoundReport> out = {groups::verify_partition(Q, A, E, F, l, res)};
    // the counting bounds on every sub-instance the partition visits
    BoundReport sub("groups.partition_reach_bounds", {{"A", A.to_json()}, {"l", l}, {"E", E.size()}});
    for (auto& x : E.items())
      for (unsigned k = 0; k <= l + 1; ++k) {
        sub.merge(groups::reach_lower_bound(Q, A, x, E, k));
        sub.merge(groups::reach_overlap_bound(Q, A, x, E, k));
      }
    out.push_back(sub.finish());
    return out;
  }
}

// Z^3 with basis (2, 3, 5) against Q* on the products 2^i 3^j 5^k.
inline std::vector<BoundReport> lattice_agreement(long, Rng& rng, const SuiteConfig&) {
  const groups::RationalGroup Q;
  const groups::LatticeGroup Z(3, {Int(2), Int(3), Int(5)});
  using ZSet = groups::ElementSet<groups::LatticeGroup>;
  while (true) {
    std::vector<Int> pool = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(random_long(rng, 5, 9));
    groups::PrimeSet A(pool);
    groups::LatticeGroup::Element base = {random_long(rng, -2, 2), random_long(rng, -2, 2), random_long(rng, -1, 1)};
    if (Z.is_torsion(base)) continue;
    std::vector<groups::LatticeGroup::Element> cand, extras;
    for (int i = 0; i < 12; ++i) cand.push_back(Z.pow(base, std::vector<long>{1, 2, 3, 4, 6, 9, -1, -2}[random_long(rng, 0, 7)]));
    for (int i = 0; i < 10; ++i) extras.push_back({random_long(rng, -3, 3), random_long(rng, -3, 3), random_long(rng, -3, 3)});
    auto [EZ, FZ] = groups::greedy_instance(Z, A, 0, cand, extras);
    if (EZ.empty()) continue;
    auto map = [&](const ZSet& S) {
      std::vector<Rat> v;
      for (auto& e : S.items()) v.push_back(Z.to_rational(e));
      return groups::ElementSet<groups::RationalGroup>(Q, v);
    };
    auto EQ = map(EZ), FQ = map(FZ);
    auto rz = groups::partition(Z, A, EZ, FZ, 0);
    auto rq = groups::partition(Q, A, EQ, FQ, 0);
    BoundReport rep("groups.lattice_agreement", {{"A", A.to_json()}, {"E", EZ.size()}, {"F", FZ.size()}});
    exact(rep, rz.r() == rq.r(), "block counts differ");
    for (size_t i = 0; i < std::min(rz.r(), rq.r()); ++i) {
      exact(rep, Z.to_rational(rz.anchors[i]) == rq.anchors[i] && rz.levels[i] == rq.levels[i], "anchors differ");
      exact(rep, map(rz.E_blocks[i]).items() == rq.E_blocks[i].items(), "E-blocks differ");
      exact(rep, map(rz.F_blocks[i]).items() == rq.F_blocks[i].items(), "F-blocks differ");
    }
    exact(rep, map(rz.remainder).items() == rq.remainder.items(), "remainders differ");
    for (auto& x : EZ.items())
      for (unsigned k = 0; k <= 2; ++k)
        exact(rep, map(groups::reach_sets(Z, A, x, EZ, k).C).items() == groups::reach_sets(Q, A, Z.to_rational(x), EQ, k).C.items(),
              "reach sets differ");
    rep.merge(groups::verify_partition(Z, A, EZ, FZ, 0, rz));
    return {rep.finish()};
  }
}

// ---- gcd bounds and the first step ----

inline std::vector<BoundReport> power_family_divides(long, Rng& rng, const SuiteConfig&) {
  gcdbounds::Exponents A = random_exponents(rng, 5, random_long(rng, 1, 3));
  IntPolynomial q = random_poly(rng, random_long(rng, 1, 30), 50);
  IntPolynomial Q = gcdbounds::gcd_power_family(q, A);
  BoundReport rep("gcd.power_family_divides", {{"q", polyz::to_json(q)}, {"A", gcdbounds::exps_json(A)}, {"Q", polyz::to_json(Q)}});
  for (auto a : A) exact(rep, polyz::divides(Q, q.compose_power(a)), "Q does not divide q(T^" + std::to_string(a) + ")");
  return {rep.finish()};
}

inline std::vector<BoundReport> multiplicity_identity(long, Rng& rng, const SuiteConfig&) {
  gcdbounds::Exponents A = random_exponents(rng, 3, random_long(rng, 1, 2));
  unsigned long t = random_long(rng, 1, 3);
  // roots c^a for every a give Q1 a factor T - c of multiplicity m
  long c = random_long(rng, 2, 3), m = random_long(rng, 0, 4);
  IntPolynomial P1 = IntPolynomial::constant(1);
  for (auto a : A) P1 *= IntPolynomial::linear_root(ipow(Int(c), a)).pow(m);
  P1 *= random_torsion_free(rng, random_long(rng, 1, 2), 5);
  IntPolynomial P = P1 * IntPolynomial::monomial(1, random_long(rng, 0, 2)) *
                    cyclo::cyclotomic_poly(random_long(rng, 1, 6)).pow(random_long(rng, 0, 4));
  return {gcdbounds::multiplicity_identity(P, A, t)};
}

inline std::vector<BoundReport> power_family_bounds(long, Rng& rng, const SuiteConfig& cfg) {
  gcdbounds::Exponents window = gcdbounds::primes_in_window(200);
  gcdbounds::GcdBoundParams prm{200, gcdbounds::Exponents(window.begin(), window.begin() + 11), 2, 6};
  IntPolynomial p = random_torsion_free(rng, random_long(rng, 1, 6), 1000000);
  return {gcdbounds::gcd_bound_report(p, prm, cfg.policy)};
}

inline std::vector<BoundReport> resultant_product(long, Rng& rng, const SuiteConfig& cfg) {
  const std::vector<std::string> pool = {"3/2", "-2/3", "5/4", "1/3", "i*3/2", "zeta(1/5)*2", "exp(1/3)", "exp(-1/2)*zeta(1/7)", "7/5", "0"};
  return admissible(rng, [&](Rng& g) {
    std::vector<gcdbounds::SamplePoint> E;
    size_t size = random_long(g, 1, 3);
    while (E.size() < size) {
      auto x = gcdbounds::SamplePoint::parse(pool[random_long(g, 0, static_cast<long>(pool.size()) - 1)]);
      if (std::find(E.begin(), E.end(), x) == E.end()) E.push_back(x);
    }
    // a shared factor keeps Q non-constant
    IntPolynomial common = random_poly(g, random_long(g, 0, 2), 4);
    std::vector<IntPolynomial> ps;
    for (long i = random_long(g, 2, 4); i > 0; --i) ps.push_back(common * random_poly(g, random_long(g, 1, 8), 30));
    unsigned long t = random_long(g, 1, 3);
    return std::vector<BoundReport>{gcdbounds::resultant_product_check(E, 10, t, ps, cfg.policy)};
  });
}

inline std::vector<BoundReport> power_transfer(long, Rng& rng, const SuiteConfig& cfg) {
  IntPolynomial p = random_poly(rng, random_long(rng, 0, 6), 20);
  unsigned long a = random_long(rng, 1, 5), t = random_long(rng, 1, 4);
  Rat q = random_rat(rng, 9, 5);
  if (q == 0) q = 1;
  return {gcdbounds::power_transfer_bound(p, a, t, PolarPoint::rational(q), cfg.policy),
          gcdbounds::power_transfer_bound(p, a, t, pick(rng, point_pool), cfg.policy)};
}

inline std::vector<BoundReport> inverse_power_derivative(long, Rng& rng, const SuiteConfig& cfg) {
  PolarPoint xi = pick(rng, point_pool);
  IntPolynomial phi = cyclo::cyclotomic_poly(random_long(rng, 1, 10));
  if (random_long(rng, 0, 1)) phi *= cyclo::cyclotomic_poly(random_long(rng, 1, 10));
  unsigned long t = random_long(rng, 1, 3);
  std::vector<BoundReport> out;
  for (unsigned long j = 0; j <= 4; ++j) out.push_back(gcdbounds::inverse_power_bound(phi, t, j, xi, gcdbounds::PhiNorm::Length, cfg.policy));
  return out;
}

inline std::vector<BoundReport> cofactor_derivatives(long, Rng& rng, const SuiteConfig& cfg) {
  PolarPoint xi = pick(rng, point_pool);
  cyclo::CycloSplit s;
  s.r = random_long(rng, 0, 2);
  s.phi = cyclo::cyclotomic_poly(random_long(rng, 1, 10));
  s.t = random_long(rng, 1, 3);
  do s.p0 = random_poly(rng, random_long(rng, 0, 3), 20);
  while (s.p0.constant_term() == 0);
  unsigned long n = std::max<unsigned long>(s.expand().degree(), s.t);
  return {gcdbounds::cofactor_derivative_bound(s, n, xi, cfg.policy)};
}

inline std::vector<BoundReport> first_step_product(long, Rng& rng, const SuiteConfig& cfg) {
  const std::vector<std::string> pool = {"3/2", "-2/3", "5/4", "1/3", "i*3/2", "zeta(1/5)*2", "exp(1/3)", "zeta(2/9)*9/10"};
  return admissible(rng, [&](Rng& g) {
    unsigned long t = random_long(g, 1, 2), M = random_long(g, 2, 3);
    std::vector<PolarPoint> E;
    size_t size = random_long(g, 1, 3);
    while (E.size() < size) {
      PolarPoint x = pick(g, pool);
      if (std::find(E.begin(), E.end(), x) == E.end()) E.push_back(x);
    }
    IntPolynomial p = cyclo::cyclotomic_poly(random_long(g, 1, 6)).pow(t) * random_poly(g, 3, 40);
    unsigned long n = std::max<unsigned long>(p.degree(), t);
    Rat log_X(static_cast<long>(10 * M * n + 100));
    auto A = random_exponents(g, M, random_long(g, 1, M));
    return std::vector<BoundReport>{gcdbounds::first_step(M, n, t, log_X, A, E, p, cfg.policy).report};
  });
}

inline std::vector<BoundReport> linearize(long, Rng& rng, const SuiteConfig& cfg) {
  while (true) {
    unsigned long t = random_long(rng, 2, 3);
    long b = random_long(rng, 1, 4), c = random_long(rng, -9, 9);
    if (c == 0 || gcd(Int(b), Int(c)) != 1) continue;
    // q1 = R^(t or t+1) G with R = bT - c, so that phi(Q) is small near c/b
    IntPolynomial R({-c, b});
    IntPolynomial G = random_torsion_free(rng, random_long(rng, 0, 2), 5);
    IntPolynomial q1 = R.pow(t + random_long(rng, 0, 1)) * G;
    Rat xi = Rat(c) / b + Rat(1) / Rat(random_long(rng, 50, 1000));
    Rat Y = std::max(Rat(q1.height()), Rat(ipow(Int(3), q1.degree())));
    std::vector<IntPolynomial> ders;
    for (unsigned long j = 0; j < t; ++j) ders.push_back(q1.divided_derivative(j));
    Rat phiQ = abs(polyz::gcd_set(ders).eval(xi));
    if (phiQ == 0 || phiQ >= Rat(1, 2)) continue;
    gcdbounds::LinearizeResult r = gcdbounds::linearize(q1, t, Rat(q1.degree()), Real(Y),
                                                        {gcdbounds::SamplePoint(PolarPoint::rational(xi))}, Real(phiQ * 2), cfg.policy);
    BoundReport rep = r.report;
    exact(rep, polyz::is_primary(r.S), "S is not primary");
    return {rep};
  }
}

inline std::vector<BoundReport> primary_coprimality(long, Rng& rng, const SuiteConfig&) {
  while (true) {
    IntPolynomial q = random_torsion_free(rng, random_long(rng, 1, 4), 9).primitive_part();
    if (!polyz::is_primary(q)) continue;
    q = q.pow(random_long(rng, 1, 2));
    unsigned long a1 = random_long(rng, 1, 6), a2 = random_long(rng, 1, 6);
    if (a1 == a2) continue;
    return {gcdbounds::coprimality_primary(q, a1, a2)};
  }
}

// ---- counting ----

// Index k runs over rows, cols in 1..4 and n1 in {1, 2, 3}.
inline std::vector<BoundReport> zarankiewicz_exhaustive(long k, Rng&, const SuiteConfig& cfg) {
  size_t rows = k / 12 + 1, cols = k / 3 % 4 + 1;
  long n1 = k % 3 + 1;
  BoundReport rep("combinat.zarankiewicz_exhaustive", {{"rows", rows}, {"cols", cols}, {"n1", n1}});
  long best = 0, feasible = 0;
  for (unsigned long mask = 0; mask < (1UL << (rows * cols)); ++mask) {
    combinat::ValueTable t = combinat::ValueTable::from_bits(rows, cols, mask);
    if (t.max_min_sum() > n1 - 1) continue;
    ++feasible;
    best = std::max(best, static_cast<long>(__builtin_popcountl(mask)));
    BoundReport r = combinat::zarankiewicz_sum_bound(t, 1, n1 - 1, cfg.policy);
    if (!r.verified()) {
      r.note = "table " + std::to_string(mask) + (r.note.empty() ? "" : ": " + r.note);
      return {r};
    }
  }
  // the optimum found by the table sweep against the search for 2 x n1 blocks
  exact(rep, best == combinat::max_ones_without_block(rows, cols, n1), "table sweep and block search disagree");
  Rat under = Rat(2 * static_cast<long>(cols) * (n1 - 1)), flat = Rat(2 * static_cast<long>(cols));
  Real bound = Rat(static_cast<long>(rows * rows)) * under > flat * flat ? Real(Rat(static_cast<long>(rows))) * sqrt(Real(under)) : Real(flat);
  rep.check(Real(best), bound, Relation::LE, cfg.policy);
  rep.params["optimum"] = best;
  rep.params["feasible_tables"] = feasible;
  return {rep.finish()};
}

inline std::vector<BoundReport> zarankiewicz_random(long, Rng& rng, const SuiteConfig& cfg) {
  size_t rows = random_long(rng, 1, 7), cols = random_long(rng, 1, 7);
  Rat k1 = Rat(random_long(rng, 1, 9)) / random_long(rng, 1, 4);
  combinat::ValueTable t(rows, cols);
  for (Rat& v : t.values)
    if (random_long(rng, 0, 2)) v = k1 * random_long(rng, 0, 12) / 12;
  Rat k2 = t.max_min_sum() + Rat(random_long(rng, 0, 3)) / 5;
  BoundReport rep = combinat::zarankiewicz_sum_bound(t, k1, k2, cfg.policy);
  rep.params["table"] = t.to_json();
  return {rep};
}

inline std::vector<BoundReport> zarankiewicz_monotone(long, Rng& rng, const SuiteConfig& cfg) {
  while (true) {
    size_t rows = random_long(rng, 2, 5), cols = random_long(rng, 2, 6);
    combinat::ValueTable t(rows, cols);
    for (Rat& v : t.values) v = Rat(random_long(rng, 0, 4)) / 4;
    Rat k2 = t.max_min_sum() + Rat(1, 2);
    BoundReport before = combinat::zarankiewicz_sum_bound(t, 1, k2, cfg.policy);
    size_t i = random_long(rng, 0, static_cast<long>(rows) - 1), j = random_long(rng, 0, static_cast<long>(cols) - 1);
    t.at(i, j) = std::min(Rat(1), Rat(t.at(i, j) + Rat(random_long(rng, 1, 4)) / 4));
    if (t.max_min_sum() > k2 || !before.verified()) continue;
    BoundReport after = combinat::zarankiewicz_sum_bound(t, 1, k2, cfg.policy);
    after.claim_id = "combinat.zarankiewicz_monotone";
    after.params["raised"] = {i, j};
    return {after};
  }
}

// One coefficient vector per instance, swept over m <= 3, N <= 20 and
// moduli <= 30; each count is compared with a scan of the full grid.
template <bool Coprime>
std::vector<BoundReport> counting(long, Rng& rng, const SuiteConfig&) {
  std::vector<long> a(3);
  for (long& x : a) x = random_long(rng, -1000, 1000);
  long b = random_long(rng, -100, 100);
  BoundReport rep(Coprime ? "combinat.coprime_count" : "combinat.congruence_count", {{"a", a}, {"m_max", 3}, {"N_max", 20}, {"modulus_max", 30}});
  if (!Coprime) rep.params["b"] = b;
  long counts = 0;
  for (long m = 1; m <= 3; ++m) {
    std::vector<Int> am(a.begin(), a.begin() + m);
    std::vector<long> al(a.begin(), a.begin() + m);
    for (long d = 1; d <= 30; ++d) {
      if (combinat::detail::gcd_all(am, Int(d)) != 1) continue;
      for (long N = 1; N <= 20; ++N) {
        combinat::CongruenceCount c;
        long ref;
        if (Coprime) {
          c = combinat::count_coprime(m, N, d, am);
          ref = grid_scan(m, N, al, [d](long s) { return std::gcd(s, d) == 1; });
        } else {
          c = combinat::count_congruence(m, N, d, am, b);
          ref = grid_scan(m, N, al, [d, b](long s) { return ((s - b) % d + d) % d == 0; });
        }
        rep.merge(c.report);
        ++counts;
        if (c.count != ref) {
          rep.fail_with("m=" + std::to_string(m) + " N=" + std::to_string(N) + " modulus=" + std::to_string(d) +
                        ": count " + to_string(c.count) + ", grid scan " + std::to_string(ref));
          return {rep.finish()};
        }
      }
    }
  }
  exact(rep, true, "");
  rep.params["counts"] = counts;
  return {rep.finish()};
}

// phi and omega up to 10^6: sieve tables against Eratosthenes smallest factors.
inline std::vector<BoundReport> arithmetic_tables(long, Rng&, const SuiteConfig&) {
  const std::uint32_t n = 1000000;
  ArithmeticTables tab(n);
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i)
    if (spf[i] == 0)
      for (std::uint64_t k = i; k <= n; k += i)
        if (spf[k] == 0) spf[k] = i;
  BoundReport rep("combinat.arithmetic_tables", {{"limit", n}});
  long bad = 0;
  std::uint32_t first_bad = 0;
  for (std::uint32_t D = 1; D <= n; ++D) {
    std::uint64_t phi = D;
    unsigned w = 0;
    for (std::uint32_t x = D; x > 1;) {
      std::uint32_t p = spf[x];
      phi = phi / p * (p - 1);
      ++w;
      while (x % p == 0) x /= p;
    }
    bool ok = tab.phi[D] == phi && tab.omega[D] == w;
    // the factorization route on a stride
    if (D % 97 == 1) ok = ok && euler_phi(Int(D)) == Int(static_cast<unsigned long>(phi)) && omega(Int(D)) == w;
    if (!ok && bad++ == 0) first_bad = D;
  }
  rep.check(Real(bad), Real(0));
  if (bad) rep.fail_with("first disagreement at D = " + std::to_string(first_bad));
  return {rep.finish()};
}

// ---- construction and the step trace ----

struct ConstructionCase {
  Rat xi;
  long n;
  Rat nu;
};

inline const std::vector<ConstructionCase>& construction_cases() {
  static const std::vector<ConstructionCase> cases = {
      {Rat(3, 2), 8, Rat(6, 5)}, {Rat(3, 2), 12, Rat(6, 5)}, {Rat(3, 2), 16, Rat(6, 5)}, {Rat(3, 2), 12, Rat(3, 2)}};
  return cases;
}

inline std::vector<BoundReport> small_value_poly(long index, Rng&, const SuiteConfig& cfg) {
  const ConstructionCase& c = construction_cases()[index];
  auxpoly::SmallValueParams prm;
  prm.n = c.n;
  prm.xi = {PolarPoint::rational(c.xi)};
  prm.beta = 2;
  prm.nu = c.nu;
  auxpoly::ConstructResult res = auxpoly::construct_small_value_poly(prm, cfg.policy);
  if (res.status != auxpoly::ConstructStatus::FOUND) {
    BoundReport rep("harness.small_value_poly", prm.to_json());
    rep.inconclusive(std::string(auxpoly::to_string(res.status)) + ": " + res.note);
    return {rep.finish()};
  }
  PrecisionPolicy doubled{2 * cfg.policy.initial_bits, 2 * cfg.policy.max_bits};
  BoundReport again = auxpoly::verify_small_values(*res.P, prm, doubled);
  again.params["reverified_at"] = doubled.initial_bits;
  return {res.report, again};
}

struct PipelineCase {
  std::string name;
  pipeline::PipelineParams prm;
  std::vector<PolarPoint> xi;
  IntPolynomial P;
  pipeline::Alternative expected;
};

// xi = (2 e^eta, e^eta), eta = 2^-6200, off the unit circle; the roots 2^a of
// P for the primes a in [75, 150] put a common root of all P(T^a) at 2.
inline PipelineCase small_gcd_case() {
  PipelineCase c;
  c.name = "small_gcd";
  c.prm.n = 14;
  c.prm.m = 2;
  c.prm.mu = Rat(19, 10);
  c.prm.sigma = Rat(19, 10);
  c.prm.tau = 0;
  c.prm.beta = 4;
  c.prm.nu = 3;
  Rat eta = Rat(1) / ipow(Int(2), 6200);
  c.xi = {PolarPoint(2, eta, 0, 0), PolarPoint(1, eta, 0, 0)};
  c.P = IntPolynomial::constant(1);
  for (auto a : gcdbounds::primes_in_window(150)) c.P *= IntPolynomial::linear_root(ipow(Int(2), a));
  c.expected = pipeline::Alternative::Q_SMALL;
  return c;
}

// xi = e^-300: E = {xi, xi^2} clusters near 0, where T^6 is tiny.
inline PipelineCase cluster_case() {
  PipelineCase c;
  c.name = "cluster";
  c.prm.n = 6;
  c.prm.mu = Rat(31, 50);
  c.prm.sigma = Rat(11, 10);
  c.prm.tau = 0;
  c.prm.beta = 6;
  c.prm.nu = Rat(19, 5);
  c.xi = {PolarPoint::exp_real(-300)};
  c.P = IntPolynomial::monomial(1, 6);
  c.expected = pipeline::Alternative::CLUSTER;
  return c;
}

// P from the lattice construction at xi = e^(1/3).
inline PipelineCase constructed_case(const PrecisionPolicy& policy) {
  auxpoly::SmallValueParams sp;
  sp.n = 8;
  sp.xi = {PolarPoint::exp_real(Rat(1, 3))};
  sp.sigma = Rat(2, 5);
  sp.beta = 3;
  sp.nu = Rat(17, 5);
  auxpoly::ConstructResult cr = auxpoly::construct_small_value_poly(sp, policy);
  if (!cr.P) fail(ErrorKind::Inconclusive, "construction for the pipeline instance: " + cr.note);
  PipelineCase c;
  c.name = "constructed";
  c.prm.n = 8;
  c.prm.sigma = sp.sigma;
  c.prm.mu = sp.sigma;
  c.prm.tau = 0;
  c.prm.beta = 3;
  c.prm.nu = sp.nu;
  c.xi = sp.xi;
  c.P = *cr.P;
  c.expected = pipeline::Alternative::Q_SMALL;
  return c;
}

inline std::vector<BoundReport> pipeline_trace(long index, Rng&, const SuiteConfig& cfg) {
  PipelineCase c = index == 0 ? small_gcd_case() : index == 1 ? cluster_case() : constructed_case(cfg.policy);
  pipeline::PipelineTrace tr = pipeline::run_pipeline(c.prm, c.xi, c.P, cfg.policy);
  pipeline::PipelineTrace again = pipeline::run_pipeline(c.prm, c.xi, c.P, cfg.policy);
  BoundReport rep("harness.pipeline", {{"instance", c.name},
                                       {"params", c.prm.to_json()},
                                       {"status", pipeline::to_string(tr.status)},
                                       {"route", tr.route},
                                       {"branch", pipeline::to_string(tr.branch)},
                                       {"steps", tr.events.size()},
                                       {"I", tr.I_count},
                                       {"E", tr.E_count},
                                       {"coprime_count", to_string(tr.coprime_count)}});
  for (auto& e : tr.events) {
    if (e.verdict == "VIOLATED") rep.fail_with("step " + e.step + " VIOLATED");
    if (e.verdict == "INCONCLUSIVE") rep.inconclusive("step " + e.step + " INCONCLUSIVE");
  }
  exact(rep, tr.status == pipeline::Status::COMPLETE, "trace terminated at " + (tr.events.empty() ? "" : tr.events.back().step));
  exact(rep, tr.branch == c.expected, std::string("branch ") + pipeline::to_string(tr.branch));
  exact(rep, Int(tr.I_count) == tr.coprime_count, "|I| differs from the coprime count");
  bool same = tr.events.size() == again.events.size();
  for (size_t k = 0; same && k < tr.events.size(); ++k)
    same = tr.events[k].inputs_digest == again.events[k].inputs_digest && tr.events[k].outputs_digest == again.events[k].outputs_digest;
  exact(rep, same, "rerun produced a different trace");
  return {rep.finish()};
}

} // namespace detail

// Every suite, sorted by claim id.
inline const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites = [] {
    using namespace detail;
    std::vector<Suite> s = {
        {"polyz.divided_derivative_composition", "(P^[j])^[k] = C(j+k, j) P^[j+k] for deg P <= 50", 60, false, divided_derivative_composition},
        {"polyz.gelfond_product", "e^-deg H(P) <= prod H(P_i) <= e^deg H(P) for P = prod P_i", 100, false, gelfond_product},
        {"polyz.gcd_divides", "the gcd divides every input and absorbs every common factor", 30, false, gcd_divides},
        {"polyz.factor_roundtrip", "factorization multiplies back; factors of degree <= 8 are irreducible", 40, false, factor_roundtrip},
        {"numeric.containment", "enclosures of P^[j] at Gaussian rationals contain the exact value", 1000, false, containment},
        {"numeric.height_mahler", "e^-deg H(P) <= M(P) <= e^deg H(P) for primitive P", 60, false, height_mahler},
        {"numeric.mahler_multiplicative", "M(PQ) and M(P) M(Q) have intersecting enclosures", 40, false, mahler_multiplicative},
        {"numeric.delta_E_permutation", "Delta_E does not depend on the order of the points", 50, false, delta_E_permutation},
        {"cyclo.order_bound", "l <= 2 d log2(2d) / g for roots of cyclotomic products (exhaustive)", 1, true,
         [](long, Rng&, const SuiteConfig& cfg) { return std::vector<BoundReport>{cyclo::order_bound_report(cfg.max_order, 40)}; }},
        {"cyclo.root_separation", "|z1 - z2| >= 4/(l1 l2) for distinct roots of unity (exhaustive)", 1, true,
         [](long, Rng&, const SuiteConfig& cfg) {
           return std::vector<BoundReport>{cyclo::root_separation_report(cfg.max_order, std::min<numeric::Prec>(cfg.policy.max_bits, 512))};
         }},
        {"cyclo.cyclotomic_degree", "deg Phi_n = phi(n) and Phi_n divides T^n - 1, n <= 150", 150, true, cyclotomic_degree},
        {"cyclo.split_maximal", "T^r Phi^t P0 reconstructs P and Phi is maximal", 60, false, split_maximal},
        {"cyclo.dichotomy", "dichotomy branches re-verify at doubled precision", 30, false, dichotomy},
        {"groups.den_num", "num and den divide any witnessing relation and shift under y -> y^q", 200, false, den_num},
        {"groups.reach_lower_bound", "|D_k| >= (|A|-k)/(k+1) |C_k|", 120, false, reach_bound<true>},
        {"groups.reach_overlap_bound", "|D_k & O(E \\ C_k)| <= (k+1) |C_(k+1)|", 120, false, reach_bound<false>},
        {"groups.partition", "partitions of random instances pass the independent re-check", 200, false, partition},
        {"groups.lattice_agreement", "Z^3 and Q* partitions agree under the prime-power map", 50, false, lattice_agreement},
        {"gcd.power_family_divides", "gcd{q(T^a)} divides each q(T^a), deg q <= 30", 20, false, power_family_divides},
        {"gcd.multiplicity_identity", "ord_z Q = max(0, ord_z Q1 - t + 1)", 60, false, multiplicity_identity},
        {"gcd.power_family_bounds", "degree and height bounds for gcd{P(T^a)}, M = 200, |A| = 11, l = 2", 100, false, power_family_bounds},
        {"gcd.resultant_product", "the resultant product inequality for Q = gcd(P_i)", 100, false, resultant_product},
        {"gcd.linearize", "linearization returns a primary S within its three bounds", 100, false, linearize},
        {"gcd.primary_coprimality", "q(T^a1) and q(T^a2) are coprime for primary q", 30, false, primary_coprimality},
        {"first_step.power_transfer", "derivatives of P(T^a) at xi against those of P at xi^a", 40, false, power_transfer},
        {"first_step.inverse_power_derivative", "derivatives of Phi^-t against (t+2j) deg Phi L(Phi)", 40, false, inverse_power_derivative},
        {"first_step.cofactor_derivatives", "derivatives of the cofactor of Phi^t", 40, false, cofactor_derivatives},
        {"first_step.product", "the first-step product inequality and its conclusion", 100, false, first_step_product},
        {"combinat.zarankiewicz_exhaustive", "the table-sum bound against the optimum over all 0/1 tables up to 4 x 4", 48, true,
         zarankiewicz_exhaustive},
        {"combinat.zarankiewicz_random", "the table-sum bound on random rational tables", 1000, false, zarankiewicz_random},
        {"combinat.zarankiewicz_monotone", "raising an entry keeps the bound verified", 300, false, zarankiewicz_monotone},
        {"combinat.congruence_count", "congruence counts against a grid scan, with |E| <= (3N)^(m-1)", 100, false, counting<false>},
        {"combinat.coprime_count", "coprime counts against a grid scan, with |E| <= 2^w (3N)^(m-1)", 100, false, counting<true>},
        {"combinat.arithmetic_tables", "phi and omega tables up to 10^6 against factorization", 1, true, arithmetic_tables},
        {"harness.small_value_poly", "lattice-constructed small-value polynomials re-verify at doubled precision",
         static_cast<long>(construction_cases().size()), true, small_value_poly},
        {"harness.pipeline", "step traces reach their branch, reproduce, and match the coprime count", 3, true, pipeline_trace},
    };
    std::sort(s.begin(), s.end(), [](const Suite& a, const Suite& b) { return a.id < b.id; });
    return s;
  }();
  return suites;
}

inline const Suite& find_suite(const std::string& id) {
  for (auto& s : registry())
    if (s.id == id) return s;
  fail(ErrorKind::Config, "unknown claim id: " + id);
}

struct SuiteResult {
  std::string claim_id;
  std::string description;
  std::vector<BoundReport> reports;

  long count(Verdict v) const {
    return std::count_if(reports.begin(), reports.end(), [v](const BoundReport& r) { return r.verdict == v; });
  }
  bool violated() const { return count(Verdict::VIOLATED) > 0; }
  bool all_verified() const { return !reports.empty() && count(Verdict::VERIFIED) == static_cast<long>(reports.size()); }

  nlohmann::json to_json() const {
    nlohmann::json reps = nlohmann::json::array();
    for (auto& r : reports) reps.push_back(r.to_json());
    return {{"claim_id", claim_id},
            {"description", description},
            {"counts",
             {{"VERIFIED", count(Verdict::VERIFIED)}, {"INCONCLUSIVE", count(Verdict::INCONCLUSIVE)}, {"VIOLATED", count(Verdict::VIOLATED)}}},
            {"reports", reps}};
  }
};

struct CampaignSpec {
  std::vector<std::string> suites;  // claim ids; "all" selects every suite
  SuiteConfig config;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CampaignReport {
  std::uint64_t seed = 0;
  std::string timestamp;
  std::vector<SuiteResult> suites;

  bool violated() const {
    return std::any_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.violated(); });
  }
  const SuiteResult* find(const std::string& id) const {
    for (auto& s : suites)
      if (s.claim_id == id) return &s;
    return nullptr;
  }
  // Identical across runs with the same spec once timing is left out.
  nlohmann::json to_json(bool timing = true) const {
    nlohmann::json ss = nlohmann::json::array();
    for (auto& s : suites) ss.push_back(s.to_json());
    nlohmann::json j = {{"seed", seed}, {"suites", ss}};
    if (timing)
      j["timestamp"] = timestamp;
    else
      pipeline::detail::strip_timing(j);
    return j;
  }
};

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Runs every (suite, instance) pair in a thread pool. Each instance is
// single-threaded with its own generator; results are placed by index, so the
// merge order is claim id, then instance.
inline CampaignReport run_campaign(const CampaignSpec& spec) {
  std::vector<std::string> ids;
  for (auto& id : spec.suites) {
    if (id == "all") {
      for (auto& s : registry()) ids.push_back(s.id);
    } else {
      ids.push_back(find_suite(id).id);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  CampaignReport out;
  out.seed = spec.config.seed;
  out.timestamp = utc_timestamp();
  std::vector<const Suite*> suites;
  std::vector<std::pair<size_t, long>> tasks;
  for (auto& id : ids) {
    suites.push_back(&find_suite(id));
    for (long i = 0; i < suites.back()->count(spec.config); ++i) tasks.emplace_back(suites.size() - 1, i);
  }
  std::vector<std::vector<BoundReport>> results(tasks.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    numeric::widen_exponent_range();
    for (size_t k; (k = next++) < tasks.size();) {
      const Suite& s = *suites[tasks[k].first];
      long index = tasks[k].second;
      Rng rng = detail::instance_rng(spec.config.seed, s.id, index);
      try {
        results[k] = s.run(index, rng, spec.config);
      } catch (const Error& e) {
        BoundReport rep(s.id, {{"instance", index}});
        if (e.kind() == ErrorKind::Inconclusive)
          rep.inconclusive(e.what());
        else
          rep.fail_with(std::string(to_string(e.kind())) + " error: " + e.what());
        results[k] = {rep.finish()};
      } catch (const std::exception& e) {
        BoundReport rep(s.id, {{"instance", index}});
        rep.fail_with(std::string("unexpected error: ") + e.what());
        results[k] = {rep.finish()};
      }
    }
  };
  unsigned n = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<size_t>(n, std::max<size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto* s : suites) out.suites.push_back({s->id, s->description, {}});
  for (size_t k = 0; k < tasks.size(); ++k)
    for (auto& r : results[k]) out.suites[tasks[k].first].reports.push_back(std::move(r));
  return out;
}

} // namespace smallval::campaign
