#pragma once

// Roots of unity, cyclotomic polynomials and products of them, nearest-root
// estimates, the unification of root-of-unity approximations along a lattice,
// the cyclotomic dichotomy on a grid of monomial points, and the Dirichlet
// subspace for points off the unit circle.

#include <map>
#include <optional>

#include "smallval/linalg.hpp"
#include "smallval/numeric.hpp"
#include "smallval/report.hpp"

namespace smallval::cyclo {

using linalg::IntVec;
using numeric::PolarPoint;
using numeric::PrecisionPolicy;
using numeric::Prec;
using polyz::IntPolynomial;

// e^(2 pi i k/n) with 0 <= k < n and gcd(k, n) = 1.
struct RootOfUnity {
  Int k = 0, n = 1;

  RootOfUnity() = default;
  RootOfUnity(const Int& num, const Int& den) : k(num), n(den) {
    require(n >= 1, "root of unity needs positive order");
    k %= n;
    if (k < 0) k += n;
    Int g = gcd(k, n);
    k /= g;
    n /= g;
  }
  static RootOfUnity from_turns(const Rat& q) { return {q.get_num(), q.get_den()}; }

  Rat turns() const { return Rat(k, n); }
  const Int& order() const { return n; }
  PolarPoint point() const { return PolarPoint::root_of_unity(k, n); }
  RootOfUnity pow(const Int& e) const { return {k * e, n}; }
  RootOfUnity conj() const { return {n - k, n}; }
  std::string to_string() const { return "zeta(" + k.get_str() + "/" + n.get_str() + ")"; }

  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) { return a.k == b.k && a.n == b.n; }
  friend bool operator<(const RootOfUnity& a, const RootOfUnity& b) {
    return a.n != b.n ? a.n < b.n : a.k < b.k;
  }
};

inline IntPolynomial cyclotomic_poly(unsigned long n) {
  thread_local std::map<unsigned long, IntPolynomial> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  IntPolynomial p = polyz::cyclotomic_polynomial(n);
  cache.emplace(n, p);
  return p;
}

// Multiplicity of Phi_n in f for every n with Phi_n | f, ascending in n.
// Only orders with phi(n) <= deg f can occur, and those satisfy n <= 2 deg^2.
inline std::vector<std::pair<unsigned long, unsigned>> cyclotomic_multiplicities(IntPolynomial f, IntPolynomial* rest = nullptr) {
  require(!f.is_zero(), "cyclotomic multiplicities of zero");
  std::vector<std::pair<unsigned long, unsigned>> out;
  long deg = f.degree();
  if (deg >= 1) {
    auto bound = static_cast<std::uint32_t>(2 * deg * deg + 2);
    ArithmeticTables tab(bound);
    for (std::uint32_t n = 1; n <= bound && f.degree() >= 1; ++n) {
      if (tab.phi[n] > static_cast<std::uint32_t>(f.degree())) continue;
      IntPolynomial c = cyclotomic_poly(n);
      unsigned e = 0;
      while (f.degree() >= c.degree()) {
        auto q = polyz::divide_exact(f, c);
        if (!q) break;
        f = *q;
        ++e;
      }
      if (e) out.emplace_back(n, e);
    }
  }
  if (rest) *rest = f;
  return out;
}

// (n, multiplicity) pairs when phi is a product of cyclotomic polynomials.
inline std::optional<std::vector<std::pair<unsigned long, unsigned>>> cyclotomic_decomposition(const IntPolynomial& phi) {
  if (phi.is_zero() || phi.leading() != 1 || phi.constant_term() == 0) return std::nullopt;
  IntPolynomial rest;
  auto m = cyclotomic_multiplicities(phi, &rest);
  if (rest != IntPolynomial::constant(1)) return std::nullopt;
  return m;
}

inline bool is_cyclotomic(const IntPolynomial& phi) { return cyclotomic_decomposition(phi).has_value(); }

// True when p vanishes at 0 or at some root of unity (decided exactly).
inline bool has_torsion_or_zero_root(const IntPolynomial& p) {
  require(!p.is_zero(), "root test of zero polynomial");
  if (p.constant_term() == 0) return true;
  return !cyclotomic_multiplicities(p).empty();
}

// p = T^r * phi^t * p0 with r maximal and phi the largest cyclotomic
// polynomial whose t-th power divides p.
struct CycloSplit {
  unsigned long r = 0;
  IntPolynomial phi;
  unsigned long t = 1;
  IntPolynomial p0;

  IntPolynomial expand() const { return IntPolynomial::monomial(1, r) * phi.pow(t) * p0; }
  nlohmann::json to_json() const {
    return {{"r", r}, {"phi", polyz::to_json(phi)}, {"t", t}, {"p0", polyz::to_json(p0)}};
  }
};

inline CycloSplit cyclo_split(const IntPolynomial& p, unsigned long t) {
  require(!p.is_zero(), "cyclo_split of zero polynomial");
  require(t >= 1, "cyclo_split needs t >= 1");
  CycloSplit s;
  s.t = t;
  s.r = p.zero_order();
  IntPolynomial f = p.shift_down(s.r);
  s.phi = IntPolynomial::constant(1);
  for (auto& [n, e] : cyclotomic_multiplicities(f)) s.phi *= cyclotomic_poly(n).pow(e / t);
  auto q = polyz::divide_exact(f, s.phi.pow(t));
  require(q.has_value(), "cyclotomic part does not divide");
  s.p0 = *q;
  return s;
}

// Roots of a product of cyclotomic polynomials with their multiplicities.
inline std::vector<std::pair<RootOfUnity, unsigned>> roots_with_multiplicity(const IntPolynomial& phi) {
  auto dec = cyclotomic_decomposition(phi);
  require(dec.has_value(), "polynomial is not a product of cyclotomic polynomials");
  std::vector<std::pair<RootOfUnity, unsigned>> out;
  for (auto& [n, e] : *dec)
    for (unsigned long k = 0; k < n; ++k)
      if (std::gcd(k, n) == 1) out.emplace_back(RootOfUnity(Int(k), Int(n)), e);
  return out;
}

inline unsigned multiplicity_of(const IntPolynomial& phi, const RootOfUnity& z) {
  auto dec = cyclotomic_decomposition(phi);
  require(dec.has_value(), "polynomial is not a product of cyclotomic polynomials");
  for (auto& [n, e] : *dec)
    if (Int(n) == z.n) return e;
  return 0;
}

namespace detail {

inline bool is_real(const PolarPoint& x) {
  return x.radians() == 0 && (x.turns() == 0 || x.turns() == Rat(1, 2));
}

// |a - b|, exact when the points coincide or are both rational.
inline Real distance(const PolarPoint& a, const PolarPoint& b) {
  if (a == b) return Real(0);
  if (a.is_rational() && b.is_rational()) return Real(smallval::abs(Rat(a.rational_value() - b.rational_value())));
  return Real::from([a, b](Prec p) { return (a.enclose(p) - b.enclose(p)).abs(); });
}

struct ArgMin {
  size_t index = 0;
  bool certified = false;
};

// Index of a smallest entry. Entries sharing a group id are known to be
// equal and need not be separated. Ties are broken towards the lower index.
inline ArgMin certified_argmin(const std::vector<Real>& xs, const std::vector<size_t>& group, const PrecisionPolicy& policy) {
  ArgMin out;
  for (Prec prec = policy.initial_bits; prec <= policy.max_bits; prec *= 2) {
    std::vector<RealInterval> e;
    try {
      for (auto& x : xs) e.push_back(x.enclose(prec));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Inconclusive) throw;
      continue;
    }
    size_t best = 0;
    for (size_t i = 1; i < e.size(); ++i)
      if (e[i].hi() < e[best].hi()) best = i;
    out.index = best;
    bool ok = true;
    for (size_t i = 0; i < e.size() && ok; ++i)
      if (group[i] != group[best] && !(e[best].hi() < e[i].lo())) ok = false;
    if (ok) {
      out.certified = true;
      return out;
    }
  }
  return out;
}

inline Rat pow_rat(const Rat& b, long e) { return rpow(b, e); }

// Upper bound of the enclosure, slightly inflated, as a rational.
inline Rat upper_rational(const RealInterval& x) {
  Rat hi = x.hi().to_rational();
  if (hi == 0) return 0;
  return hi * (1 + Rat(1, ipow(Int(2), 64)));
}

inline Int lattice_value(const std::vector<Int>& a, const std::vector<long>& i) {
  Int s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * i[k];
  return s;
}

inline nlohmann::json points_json(const std::vector<PolarPoint>& xi) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& x : xi) j.push_back(x.to_string());
  return j;
}

inline nlohmann::json ints_json(const std::vector<Int>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& x : v) j.push_back(x.get_str());
  return j;
}

} // namespace detail

inline PolarPoint monomial(const std::vector<PolarPoint>& xi, const std::vector<long>& i) {
  return numeric::monomial_point(xi, linalg::to_int_vec(i));
}

struct NearestRoot {
  RootOfUnity zeta;
  unsigned g = 0;
  Real distance;
  bool certified_nearest = false;
  BoundReport report;
};

// A root of phi closest to xi, its multiplicity, and a check of
// |xi - zeta|^g <= (2 d^4)^d |phi(xi)| with d = deg phi.
inline NearestRoot nearest_root(const IntPolynomial& phi, const PolarPoint& xi, const PrecisionPolicy& policy = {}) {
  require(phi.degree() >= 1, "nearest_root needs a nonconstant cyclotomic polynomial");
  auto roots = roots_with_multiplicity(phi);
  std::vector<Real> dist;
  std::vector<size_t> group;
  bool real = detail::is_real(xi);
  std::map<std::pair<Int, Int>, size_t> conj_group;
  for (size_t i = 0; i < roots.size(); ++i) {
    const RootOfUnity& z = roots[i].first;
    dist.push_back(detail::distance(xi, z.point()));
    // for real xi, conjugate roots are at the same distance
    Int key = real ? std::min<Int>(z.k, Int((z.n - z.k) % z.n)) : Int(i);
    auto [it, fresh] = conj_group.try_emplace({z.n, key}, i);
    group.push_back(it->second);
  }
  auto am = detail::certified_argmin(dist, group, policy);
  NearestRoot out;
  out.zeta = roots[am.index].first;
  out.g = roots[am.index].second;
  out.distance = dist[am.index];
  out.certified_nearest = am.certified;
  long d = phi.degree();
  out.report = BoundReport("cyclo.nearest_root", {{"phi", phi.to_text()}, {"xi", xi.to_string()}, {"d", d}});
  out.report.params["zeta"] = out.zeta.to_string();
  out.report.params["g"] = out.g;
  Rat c = detail::pow_rat(Rat(2 * ipow(Int(d), 4)), d);
  out.report.check(pow(out.distance, Rat(out.g)), Real(c) * numeric::abs_value_at(phi, xi), Relation::LE, policy);
  if (!am.certified) out.report.inconclusive("nearest root not separated from another root");
  out.report.finish();
  return out;
}

struct Unified {
  std::vector<Int> a;
  Int D = 1;
  RootOfUnity Z;
  BoundReport report;
};

// Given m independent lattice points i^(k) with |xi^(i^(k)) - zeta_k| <= rho,
// builds Z of order D and a with |xi^i - Z^(a.i)| <= 4 (mN)^m rho on the grid
// of max norm N. The construction goes through the adjugate of the matrix of
// witnesses: xi_j^det = prod_k zeta_k^(b_jk) * (small), and Z_j is the det-th
// root of prod_k zeta_k^(b_jk) nearest to xi_j.
inline Unified unify_approximations(long N, const Real& rho, const std::vector<IntVec>& witnesses,
                                    const std::vector<RootOfUnity>& zetas, const std::vector<PolarPoint>& xi,
                                    const PrecisionPolicy& policy = {}) {
  size_t m = xi.size();
  require(m >= 1 && witnesses.size() == m && zetas.size() == m, "unify_approximations needs m witnesses and m roots");
  require(N >= 1, "N must be positive");
  for (auto& w : witnesses) {
    require(w.size() == m, "witness length mismatch");
    require(linalg::max_norm(w) <= N, "witness norm exceeds N");
  }
  using numeric::certify;
  Rat mn_m = rpow(Rat(long(m) * N), long(m));
  if (certify(Real(0), rho).verdict != Verdict::VERIFIED) fail(ErrorKind::Precondition, "rho must be nonnegative");
  if (certify(rho, Real(Rat(1, 2) / mn_m), Relation::LE, policy).verdict != Verdict::VERIFIED)
    fail(ErrorKind::Precondition, "rho exceeds (1/2)(mN)^-m");
  for (size_t k = 0; k < m; ++k) {
    std::vector<long> w;
    for (auto& x : witnesses[k]) w.push_back(x.get_si());
    Real dk = detail::distance(monomial(xi, w), zetas[k].point());
    if (certify(dk, rho, Relation::LE, policy).verdict != Verdict::VERIFIED)
      fail(ErrorKind::Precondition, "witness " + std::to_string(k) + " is not within rho of its root");
  }
  Int det = linalg::determinant(witnesses);
  if (det == 0) fail(ErrorKind::Precondition, "dependent witnesses");
  linalg::IntMat adj = linalg::adjugate(witnesses);

  std::vector<Rat> q(m);
  Int D = 1;
  Int ad = abs(det);
  for (size_t j = 0; j < m; ++j) {
    Rat w = 0;
    for (size_t k = 0; k < m; ++k) w += adj[j][k] * zetas[k].turns();
    // candidates c with c * det = w mod 1
    std::vector<RootOfUnity> cand;
    std::vector<Real> dist;
    std::vector<size_t> group;
    std::optional<size_t> exact;
    for (Int s = 0; s < ad; ++s) {
      RootOfUnity c = RootOfUnity::from_turns((w + s) / det);
      if (c.point() == xi[j]) exact = cand.size();
      group.push_back(cand.size());
      dist.push_back(detail::distance(xi[j], c.point()));
      cand.push_back(c);
    }
    size_t pick;
    if (exact) {
      pick = *exact;
    } else {
      auto am = detail::certified_argmin(dist, group, policy);
      if (!am.certified) fail(ErrorKind::Inconclusive, "cannot single out the nearest root for coordinate " + std::to_string(j));
      pick = am.index;
    }
    q[j] = cand[pick].turns();
    D = lcm(D, Int(q[j].get_den()));
  }
  Unified out;
  out.D = D;
  out.Z = RootOfUnity(1, D);
  for (size_t j = 0; j < m; ++j) {
    Int aj = Int(q[j] * D) % D;
    out.a.push_back(aj == 0 ? D : aj);
  }
  Int ell = 1;
  for (auto& z : zetas) ell = std::max(ell, z.n);
  out.report = BoundReport("cyclo.unify", {{"N", N}, {"m", m}, {"xi", detail::points_json(xi)}});
  out.report.params["a"] = detail::ints_json(out.a);
  out.report.params["D"] = D.get_str();
  out.report.params["det"] = det.get_str();
  Int dbound = ipow(ell * Int(long(m)) * N, m);
  if (D > dbound) out.report.fail_with("D exceeds (l m N)^m");
  Int g = D;
  for (auto& x : out.a) g = gcd(g, x);
  if (g != 1) out.report.fail_with("a and D are not coprime");
  Real bound = Real(4 * mn_m) * rho;
  linalg::for_each_grid_point(m, N, [&](const std::vector<long>& i) {
    RootOfUnity zl = out.Z.pow(detail::lattice_value(out.a, i));
    out.report.check(detail::distance(monomial(xi, i), zl.point()), bound, Relation::LE, policy);
  });
  out.report.finish();
  return out;
}

enum class Branch { SUBSPACE, NEARBY_ROOT };

inline const char* to_string(Branch b) { return b == Branch::SUBSPACE ? "SUBSPACE" : "NEARBY_ROOT"; }

struct DichotomyResult {
  std::vector<Int> a;
  Int D = 1;
  Branch branch = Branch::SUBSPACE;
  IntVec normal;   // SUBSPACE: U = {x : normal . x = 0}
  RootOfUnity Z;   // NEARBY_ROOT
  unsigned G = 0;  // NEARBY_ROOT: multiplicity of Z in phi
  BoundReport report;

  nlohmann::json to_json() const {
    nlohmann::json j = {{"branch", to_string(branch)}, {"a", detail::ints_json(a)}, {"D", D.get_str()}};
    if (branch == Branch::SUBSPACE) j["normal"] = detail::ints_json(normal);
    else {
      j["Z"] = Z.to_string();
      j["G"] = G;
    }
    j["report"] = report.to_json();
    return j;
  }
};

// Re-derives the verdict of a dichotomy outcome by enumerating the grid.
inline BoundReport dichotomy_report(const DichotomyResult& r, long d, long N, const Real& delta, const IntPolynomial& phi,
                                    const std::vector<PolarPoint>& xi, const PrecisionPolicy& policy = {}) {
  size_t m = xi.size();
  BoundReport rep(r.branch == Branch::SUBSPACE ? "cyclo.dichotomy.subspace" : "cyclo.dichotomy.nearby_root",
                  {{"m", m}, {"d", d}, {"N", N}, {"phi", phi.to_text()}, {"xi", detail::points_json(xi)}});
  rep.params["a"] = detail::ints_json(r.a);
  rep.params["D"] = r.D.get_str();
  Int g = r.D;
  for (auto& x : r.a) {
    if (x <= 0) rep.fail_with("a must be positive");
    g = gcd(g, x);
  }
  if (g != 1) rep.fail_with("a and D are not coprime");
  if (r.D > ipow(Int(2 * long(m)) * d * d * N, m)) rep.fail_with("D exceeds (2 m d^2 N)^m");
  if (r.branch == Branch::SUBSPACE) {
    rep.params["normal"] = detail::ints_json(r.normal);
    if (r.normal.size() != m || linalg::max_norm(r.normal) == 0) rep.fail_with("subspace is not proper");
    linalg::for_each_grid_point(m, N, [&](const std::vector<long>& i) {
      if (linalg::dot(r.normal, linalg::to_int_vec(i)) == 0) return;
      if (gcd(detail::lattice_value(r.a, i), r.D) != 1) return;
      rep.check(delta, numeric::abs_value_at(phi, monomial(xi, i)), Relation::LE, policy);
    });
  } else {
    rep.params["Z"] = r.Z.to_string();
    rep.params["G"] = r.G;
    if (r.Z.n != r.D) rep.fail_with("Z does not have order D");
    if (r.G == 0 || multiplicity_of(phi, r.Z) != r.G) rep.fail_with("Z is not a root of phi of multiplicity G");
    Real half = sqrt(delta);
    linalg::for_each_grid_point(m, N, [&](const std::vector<long>& i) {
      RootOfUnity zl = r.Z.pow(detail::lattice_value(r.a, i));
      rep.check(pow(detail::distance(monomial(xi, i), zl.point()), Rat(r.G)), half, Relation::LE, policy);
    });
  }
  return rep.finish();
}

// Either a proper subspace U off which |phi(xi^i)| >= delta on the grid (for
// gcd(L(i), D) = 1), or a root Z of order D with |xi^i - Z^L(i)|^G <= delta^(1/2)
// on the whole grid. Needs 0 < delta <= (8 m d^4 N)^(-2 m d). SUBSPACE is
// returned whenever it can be certified.
inline DichotomyResult cyclo_dichotomy(long d, long N, const Real& delta, const IntPolynomial& phi,
                                       const std::vector<PolarPoint>& xi, const PrecisionPolicy& policy = {}) {
  size_t m = xi.size();
  require(m >= 1, "dichotomy needs at least one point");
  require(d >= 1 && N >= 1, "d and N must be positive");
  require(phi.degree() <= d, "deg phi exceeds d");
  require(is_cyclotomic(phi), "phi must be a product of cyclotomic polynomials");
  using numeric::certify;
  if (!numeric::certainly_positive(delta, policy)) fail(ErrorKind::Precondition, "delta must be positive");
  Rat cap = 1 / rpow(Rat(8 * long(m) * d * d * d * d * N), 2 * long(m) * d);
  if (certify(delta, Real(cap), Relation::LE, policy).verdict != Verdict::VERIFIED)
    fail(ErrorKind::Precondition, "delta exceeds (8 m d^4 N)^(-2 m d)");

  // grid points where |phi(xi^i)| >= delta is not certified
  std::vector<std::vector<long>> small;
  linalg::for_each_grid_point(m, N, [&](const std::vector<long>& i) {
    if (phi.degree() == 0) return;
    if (certify(delta, numeric::abs_value_at(phi, monomial(xi, i)), Relation::LE, policy).verdict != Verdict::VERIFIED)
      small.push_back(i);
  });
  auto as_rows = [](const std::vector<std::vector<long>>& pts) {
    linalg::IntMat rows;
    for (auto& p : pts) rows.push_back(linalg::to_int_vec(p));
    return rows;
  };

  DichotomyResult out;
  linalg::IntMat rows = as_rows(small);
  if (linalg::rank(rows, m) < m) {
    out.a.assign(m, Int(1));
    out.D = 1;
    out.branch = Branch::SUBSPACE;
    out.normal = linalg::kernel_vector(rows, m);
    out.report = dichotomy_report(out, d, N, delta, phi, xi, policy);
    return out;
  }

  // m independent small points, greedily by distance to the nearest root
  struct Cand {
    std::vector<long> i;
    NearestRoot nr;
    RealInterval dist;
  };
  std::vector<Cand> cands;
  for (auto& i : small) {
    NearestRoot nr = nearest_root(phi, monomial(xi, i), policy);
    RealInterval de = nr.distance.enclose(policy.initial_bits);
    cands.push_back({i, std::move(nr), std::move(de)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.dist.hi() < y.dist.hi(); });
  std::vector<IntVec> witnesses;
  std::vector<RootOfUnity> zetas;
  Rat rho = 0;
  for (auto& c : cands) {
    linalg::IntMat trial = witnesses;
    trial.push_back(linalg::to_int_vec(c.i));
    if (linalg::rank(trial, m) < trial.size()) continue;
    witnesses = trial;
    zetas.push_back(c.nr.zeta);
    rho = std::max(rho, detail::upper_rational(c.dist));
    if (witnesses.size() == m) break;
  }
  Unified u = unify_approximations(N, Real(rho), witnesses, zetas, xi, policy);
  out.a = u.a;
  out.D = u.D;

  std::vector<std::vector<long>> coprime;
  for (auto& i : small)
    if (gcd(detail::lattice_value(u.a, i), u.D) == 1) coprime.push_back(i);
  linalg::IntMat crow = as_rows(coprime);
  if (linalg::rank(crow, m) < m) {
    out.branch = Branch::SUBSPACE;
    out.normal = linalg::kernel_vector(crow, m);
  } else {
    out.branch = Branch::NEARBY_ROOT;
    out.Z = u.Z;
    out.G = multiplicity_of(phi, u.Z);
    if (out.G == 0) fail(ErrorKind::Internal, "unified root is not a root of phi");
  }
  out.report = dichotomy_report(out, d, N, delta, phi, xi, policy);
  return out;
}

// In the NEARBY_ROOT case, |phi(xi^i)| <= 3^d delta^(1/2) whenever gcd(L(i), D) = 1.
inline BoundReport nearby_root_exclusivity(const DichotomyResult& r, long d, long N, const Real& delta,
                                           const IntPolynomial& phi, const std::vector<PolarPoint>& xi,
                                           const PrecisionPolicy& policy = {}) {
  require(r.branch == Branch::NEARBY_ROOT, "exclusivity applies to the nearby-root branch");
  BoundReport rep("cyclo.dichotomy.exclusivity", {{"d", d}, {"N", N}, {"phi", phi.to_text()}});
  Real rhs = Real(ipow(Int(3), d)) * sqrt(delta);
  linalg::for_each_grid_point(xi.size(), N, [&](const std::vector<long>& i) {
    if (gcd(detail::lattice_value(r.a, i), r.D) != 1) return;
    rep.check(numeric::abs_value_at(phi, monomial(xi, i)), rhs, Relation::LE, policy);
  });
  return rep.finish();
}

// The dichotomy under delta <= min{(8 m d^4 N)^-m, c}^(2d), where c is a
// caller-supplied approximation constant for xi. A valid c rules out the
// nearby-root branch, so a NEARBY_ROOT outcome refutes the supplied c.
inline DichotomyResult dichotomy_with_constant(long d, long N, const Real& delta, const Rat& c, const IntPolynomial& phi,
                                               const std::vector<PolarPoint>& xi, const PrecisionPolicy& policy = {}) {
  size_t m = xi.size();
  require(m >= 2, "needs at least two points");
  require(c > 0 && c <= 1, "c must lie in (0, 1]");
  Rat base = std::min(Rat(1 / rpow(Rat(8 * long(m) * d * d * d * d * N), long(m))), c);
  if (numeric::certify(delta, Real(rpow(base, 2 * d)), Relation::LE, policy).verdict != Verdict::VERIFIED)
    fail(ErrorKind::Precondition, "delta exceeds min{(8 m d^4 N)^-m, c}^(2d)");
  DichotomyResult r = cyclo_dichotomy(d, N, delta, phi, xi, policy);
  r.report.claim_id = "cyclo.dichotomy_with_constant";
  if (r.branch == Branch::NEARBY_ROOT) r.report.fail_with("nearby root found: the supplied constant is not valid for these points");
  return r;
}

struct DirichletResult {
  std::vector<Int> a;
  Int b = 1;
  IntVec normal;
  BoundReport report;

  nlohmann::json to_json() const {
    return {{"a", detail::ints_json(a)}, {"b", b.get_str()}, {"normal", detail::ints_json(normal)}, {"report", report.to_json()}};
  }
};

// Simultaneous approximation |b u_j - a_j| <= (2mN)^-1 with u_j = log|xi_j|,
// 1 <= b <= (2mN)^m (smallest such b). Off U = {a . x = 0}, every grid point
// satisfies ||xi^i| - 1| >= (8mN)^-m, hence |xi^i - zeta| >= (8mN)^-m for all
// roots of unity zeta.
inline DirichletResult dirichlet_subspace(long N, const std::vector<PolarPoint>& xi, const PrecisionPolicy& policy = {}) {
  size_t m = xi.size();
  require(m >= 2, "dirichlet_subspace needs m >= 2");
  require(N >= 1, "N must be positive");
  bool off_circle = false;
  for (auto& x : xi) off_circle = off_circle || x.compare_modulus_with_one() != 0;
  if (!off_circle) fail(ErrorKind::Precondition, "unit-circle input unsupported here");
  std::vector<Real> u;
  for (auto& x : xi) u.push_back(x.log_modulus());
  long twomn = 2 * long(m) * N;
  Real tol(Rat(1, twomn));
  Int bmax = ipow(Int(twomn), m);
  DirichletResult out;
  bool found = false;
  for (Int b = 1; b <= bmax && !found; ++b) {
    std::vector<Int> a;
    bool ok = true;
    for (size_t j = 0; j < m && ok; ++j) {
      Real bu = Real(b) * u[j];
      RealInterval e = numeric::enclose_escalating(bu, policy);
      Int aj = round_of(e.mid().to_rational());
      auto c = numeric::certify(abs(bu - Real(aj)), tol, Relation::LE, policy);
      ok = c.verdict == Verdict::VERIFIED;
      a.push_back(aj);
    }
    if (ok) {
      out.a = a;
      out.b = b;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::Internal, "no Dirichlet approximation found");
  if (linalg::max_norm(out.a) == 0) fail(ErrorKind::Precondition, "N too small: the approximation vector is zero");
  out.normal = out.a;
  out.report = BoundReport("cyclo.dirichlet_subspace", {{"N", N}, {"m", m}, {"xi", detail::points_json(xi)}});
  out.report.params["a"] = detail::ints_json(out.a);
  out.report.params["b"] = out.b.get_str();
  Real lower(1 / rpow(Rat(4 * twomn), long(m)));
  linalg::for_each_grid_point(m, N, [&](const std::vector<long>& i) {
    if (linalg::dot(out.a, linalg::to_int_vec(i)) == 0) return;
    PolarPoint w = monomial(xi, i);
    out.report.check(lower, abs(w.modulus() - Real(1)), Relation::LE, policy);
  });
  out.report.finish();
  return out;
}

// Exact check of l <= 2 d log2(2d) / g <= 2 d^2 for a root of order l and
// multiplicity g in a product of cyclotomic polynomials of degree d:
// 2^(l g) <= (2d)^(2d) and 2d <= 2^(d g).
inline bool order_bound_holds(unsigned long l, unsigned long g, unsigned long d) {
  Int lhs1 = ipow(Int(2), l * g), rhs1 = ipow(Int(2 * d), 2 * d);
  Int lhs2 = Int(2 * d), rhs2 = ipow(Int(2), d * g);
  return lhs1 <= rhs1 && lhs2 <= rhs2;
}

// Exhaustive order-bound check. A root of order l with multiplicity g in a
// cyclotomic product of degree d exists iff g phi(l) <= d, so the triples
// (l, g, d) cover every root of every such product.
inline BoundReport order_bound_report(unsigned long max_order, unsigned long max_degree) {
  BoundReport rep("cyclo.order_bound", {{"max_order", max_order}, {"max_degree", max_degree}});
  ArithmeticTables tab(static_cast<std::uint32_t>(max_order));
  for (unsigned long l = 1; l <= max_order; ++l)
    for (unsigned long g = 1; g * tab.phi[l] <= max_degree; ++g)
      for (unsigned long d = g * tab.phi[l]; d <= max_degree; ++d) {
        Certified c;
        c.verdict = order_bound_holds(l, g, d) ? Verdict::VERIFIED : Verdict::VIOLATED;
        c.lhs = RealInterval::of(long(l), 64);
        Prec p = 64;
        RealInterval two_d = RealInterval::of(long(2 * d), p);
        c.rhs = two_d * numeric::log(two_d) / (numeric::log(RealInterval::of(2L, p)) * RealInterval::of(long(g), p));
        c.precision_bits = p;
        rep.absorb(c);
      }
  return rep.finish();
}

// Exhaustive separation |z1 - z2| >= 4/(l1 l2) over ordered pairs of distinct
// roots of unity of order at most max_order.
inline BoundReport root_separation_report(unsigned long max_order, Prec max_bits = 512) {
  BoundReport rep("cyclo.root_separation", {{"max_order", max_order}, {"max_bits", max_bits}});
  struct R {
    unsigned long n;
    RootOfUnity z;
  };
  std::vector<R> roots;
  for (unsigned long n = 1; n <= max_order; ++n)
    for (unsigned long k = 0; k < n; ++k)
      if (std::gcd(k, n) == 1) roots.push_back({n, RootOfUnity(Int(k), Int(n))});
  std::map<Prec, std::vector<numeric::ComplexEnclosure>> enc;
  auto enclosures = [&](Prec p) -> const std::vector<numeric::ComplexEnclosure>& {
    auto it = enc.find(p);
    if (it != enc.end()) return it->second;
    std::vector<numeric::ComplexEnclosure> e;
    for (auto& r : roots) e.push_back(r.z.point().enclose(p));
    return enc.emplace(p, std::move(e)).first->second;
  };
  enclosures(128);
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      Certified c;
      for (Prec p = 128; p <= max_bits; p *= 2) {
        const auto& e = enclosures(p);
        c.lhs = RealInterval::of(Rat(4) / Rat(roots[i].n * roots[j].n), p);
        c.rhs = (e[i] - e[j]).abs();
        c.precision_bits = p;
        c.verdict = numeric::certified_compare(c.lhs, c.rhs, Relation::LE);
        if (c.verdict != Verdict::INCONCLUSIVE) break;
      }
      rep.absorb(c);
    }
  return rep.finish();
}

} // namespace smallval::cyclo
