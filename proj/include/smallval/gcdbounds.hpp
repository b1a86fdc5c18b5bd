#pragma once

// gcds of the families {P(T^a)} and {P0^[j](T^a)}, the degree and height
// bounds for them, the resultant product inequality, the first-step product
// estimate with its three auxiliary bounds, linearization of a small gcd
// into a primary polynomial, and coprimality of Q(T^a1), Q(T^a2).

#include <optional>
#include <string>
#include <vector>

#include "smallval/cyclo.hpp"
#include "smallval/numeric.hpp"
#include "smallval/polyz.hpp"
#include "smallval/report.hpp"

namespace smallval::gcdbounds {

using numeric::PolarPoint;
using numeric::PrecisionPolicy;
using polyz::IntPolynomial;

using Exponents = std::vector<unsigned long>;

// A point of C: zero or a nonzero polar point.
class SamplePoint {
public:
  SamplePoint(const PolarPoint& p) : p_(p) {}
  static SamplePoint zero() { return SamplePoint(); }
  static SamplePoint parse(const std::string& s) { return s == "0" ? zero() : SamplePoint(PolarPoint::parse(s)); }

  bool is_zero() const { return !p_.has_value(); }
  const PolarPoint& point() const {
    require(p_.has_value(), "zero has no polar form");
    return *p_;
  }
  Real modulus() const { return p_ ? p_->modulus() : Real(0); }
  // |f^[j](xi)|
  Real abs_value(const IntPolynomial& f, size_t j = 0) const {
    if (!p_) return Real(Rat(abs(f.coeff(j))));
    return numeric::abs_value_at(f, *p_, j);
  }
  std::string to_string() const { return p_ ? p_->to_string() : "0"; }
  friend bool operator==(const SamplePoint& a, const SamplePoint& b) { return a.p_ == b.p_; }

private:
  SamplePoint() = default;
  std::optional<PolarPoint> p_;
};

inline nlohmann::json points_json(const std::vector<SamplePoint>& E) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& x : E) j.push_back(x.to_string());
  return j;
}

inline nlohmann::json exps_json(const Exponents& A) {
  nlohmann::json j = nlohmann::json::array();
  for (auto a : A) j.push_back(a);
  return j;
}

// Delta_E = prod over unordered pairs of |xi - xi'|; 1 for a singleton.
inline Real delta_E(const std::vector<SamplePoint>& E) {
  require(!E.empty(), "Delta_E of an empty set");
  std::vector<PolarPoint> nonzero;
  bool has_zero = false;
  for (auto& x : E) {
    if (x.is_zero()) {
      require(!has_zero, "Delta_E needs distinct points");
      has_zero = true;
    } else {
      nonzero.push_back(x.point());
    }
  }
  Real d = nonzero.empty() ? Real(1) : numeric::delta_E(nonzero);
  if (has_zero)
    for (auto& p : nonzero) d = d * p.modulus();
  return d;
}

// max |x| over E
inline Real max_modulus(const std::vector<SamplePoint>& E) {
  std::vector<Real> m;
  for (auto& x : E) m.push_back(x.modulus());
  return m.size() == 1 ? m[0] : max(m);
}

// max(|x|, 1/|x|) over E; E must avoid zero.
inline Real max_distortion(const std::vector<PolarPoint>& E) {
  std::vector<Real> m;
  for (auto& x : E) {
    Real r = x.modulus();
    m.push_back(max(r, Real(1) / r));
  }
  return m.size() == 1 ? m[0] : max(m);
}

// gcd in Z[T] of {p(T^a) : a in A}, positive leading coefficient.
inline IntPolynomial gcd_power_family(const IntPolynomial& p, const Exponents& A) {
  require(!p.is_zero(), "power family of the zero polynomial");
  require(!A.empty(), "power family needs a non-empty exponent set");
  std::vector<IntPolynomial> fam;
  for (auto a : A) {
    require(a >= 1, "exponents must be positive");
    fam.push_back(p.compose_power(a));
  }
  return polyz::gcd_set(fam);
}

// gcd in Z[T] of {p0^[j](T^a) : a in A, 0 <= j < t}.
inline IntPolynomial gcd_derivative_family(const IntPolynomial& p0, const Exponents& A, unsigned long t) {
  require(!p0.is_zero(), "derivative family of the zero polynomial");
  require(!A.empty(), "derivative family needs a non-empty exponent set");
  require(t >= 1, "derivative family needs t >= 1");
  std::vector<IntPolynomial> fam;
  for (unsigned long j = 0; j < t; ++j) {
    IntPolynomial d = p0.divided_derivative(j);
    if (d.is_zero()) break;
    for (auto a : A) {
      require(a >= 1, "exponents must be positive");
      fam.push_back(d.compose_power(a));
    }
  }
  return polyz::gcd_set(fam);
}

// Parameters of the degree/height bound for gcd{P(T^a)}: A a set of primes
// in [M/2, M], 4 <= 2l <= |A|, n <= binom(|A|, l+2) / (2^(l+1) (l+1)!).
struct GcdBoundParams {
  unsigned long M = 2;
  Exponents A;
  unsigned long l = 2;
  unsigned long n = 1;

  void validate() const {
    if (M < 2) fail(ErrorKind::Precondition, "parameter: M must be at least 2");
    if (A.empty()) fail(ErrorKind::Precondition, "parameter: A must be non-empty");
    for (size_t i = 0; i < A.size(); ++i) {
      if (!is_prime(static_cast<std::uint64_t>(A[i]))) fail(ErrorKind::Precondition, "parameter: A contains a non-prime");
      if (2 * A[i] < M || A[i] > M) fail(ErrorKind::Precondition, "parameter: A must lie in [M/2, M]");
      for (size_t j = 0; j < i; ++j)
        if (A[j] == A[i]) fail(ErrorKind::Precondition, "parameter: A has repeated entries");
    }
    if (4 > 2 * l || 2 * l > A.size()) fail(ErrorKind::Precondition, "parameter: l must satisfy 4 <= 2l <= |A|");
    if (!(Int(n) * ipow(Int(2), l + 1) * factorial(l + 1) <= binomial(A.size(), l + 2)))
      fail(ErrorKind::Precondition, "parameter: n exceeds binom(|A|, l+2) / (2^(l+1) (l+1)!)");
  }
  Int c() const { return Int(l) * ipow(Int(2), 2 * l + 6); }
  nlohmann::json to_json() const { return {{"M", M}, {"A", exps_json(A)}, {"l", l}, {"n", n}}; }
};

// Primes p with M/2 <= p <= M.
inline Exponents primes_in_window(unsigned long M) {
  Exponents out;
  for (auto p : primes_up_to(M))
    if (2 * p >= M) out.push_back(p);
  return out;
}

// deg Q <= (6l/|A|) deg P and log H(Q) <= (c/(|A| M)) (M deg P + log H(P))
// for Q = gcd{P(T^a) : a in A}.
inline BoundReport gcd_bound_report(const IntPolynomial& p, const GcdBoundParams& prm, const PrecisionPolicy& policy = {}) {
  prm.validate();
  require(!p.is_zero(), "gcd bound of the zero polynomial");
  if (static_cast<unsigned long>(p.degree()) > prm.n) fail(ErrorKind::Precondition, "deg P exceeds n");
  if (cyclo::has_torsion_or_zero_root(p)) fail(ErrorKind::Precondition, "P has a root at zero or at a root of unity");
  BoundReport rep("gcd.power_family_bounds", prm.to_json());
  IntPolynomial Q = gcd_power_family(p, prm.A);
  rep.params["P"] = polyz::to_json(p);
  rep.params["Q"] = polyz::to_json(Q);
  Rat a(static_cast<long>(prm.A.size()));
  Rat deg_bound = Rat(6 * static_cast<long>(prm.l)) / a * p.degree();
  rep.check(Real(Q.degree()), Real(deg_bound), numeric::Relation::LE, policy);
  Real rhs = Real(Rat(prm.c()) / (a * static_cast<long>(prm.M))) *
             (Real(Rat(static_cast<long>(prm.M) * p.degree())) + log(Real(p.height())));
  rep.check(log(Real(Q.height())), rhs, numeric::Relation::LE, policy);
  return rep.finish();
}

// prod_{xi in E} (|Q(xi)|/cont Q)^t <= c1 (max H(P_i))^(2n) prod_xi (max_{i, j<t} |P_i^[j](xi)|)^t
// with c1 = e^(10 n^2) (2 + c_E)^(4 n t |E|) Delta_E^(-t^2), Q = gcd(P_i).
inline BoundReport resultant_product_check(const std::vector<SamplePoint>& E, unsigned long n, unsigned long t,
                                           const std::vector<IntPolynomial>& ps, const PrecisionPolicy& policy = {}) {
  require(!E.empty(), "E must be non-empty");
  if (t < 1 || n < t * E.size()) fail(ErrorKind::Precondition, "need n >= t|E| and t >= 1");
  if (ps.size() < 2) fail(ErrorKind::Precondition, "need at least two polynomials");
  for (auto& p : ps) {
    if (p.is_zero()) fail(ErrorKind::Precondition, "zero polynomial in the family");
    if (static_cast<unsigned long>(p.degree()) > n) fail(ErrorKind::Precondition, "polynomial degree exceeds n");
  }
  BoundReport rep("gcd.resultant_product", {{"n", n}, {"t", t}, {"E", points_json(E)}, {"r", ps.size()}});
  IntPolynomial Q = polyz::gcd_set(ps);
  rep.params["Q"] = polyz::to_json(Q);
  Rat tq(static_cast<long>(t));
  Real lhs(1);
  Real prod_max(1);
  for (auto& x : E) {
    lhs = lhs * pow(x.abs_value(Q) / Real(Q.content()), tq);
    std::vector<Real> vals;
    for (auto& p : ps)
      for (unsigned long j = 0; j < t; ++j) vals.push_back(x.abs_value(p, j));
    prod_max = prod_max * pow(max(vals), tq);
  }
  Rat hmax = 0;
  for (auto& p : ps) hmax = std::max(hmax, p.height());
  long nt = static_cast<long>(n), tt = static_cast<long>(t), e = static_cast<long>(E.size());
  Real c1 = exp(Real(10 * nt * nt)) * pow(Real(2) + max_modulus(E), Rat(4 * nt * tt * e)) * pow(delta_E(E), Rat(-tt * tt));
  Real rhs = c1 * Real(rpow(hmax, 2 * nt)) * prod_max;
  rep.check(lhs, rhs, numeric::Relation::LE, policy);
  return rep.finish();
}

// (Phi^-t)^(j) = A_j Phi^(-t-j) with A_0 = 1, A_j = A_{j-1}' Phi - (t+j-1) A_{j-1} Phi'.
inline IntPolynomial inverse_power_numerator(const IntPolynomial& phi, unsigned long t, unsigned long j) {
  IntPolynomial a = IntPolynomial::constant(1), dphi = phi.derivative();
  for (unsigned long k = 1; k <= j; ++k) a = a.derivative() * phi - Int(t + k - 1) * a * dphi;
  return a;
}

// Which measure of Phi enters the inverse-power bound. With the sup norm the bound fails
// (Phi_7, t = 3, j = 1, xi = 5/4); with the length L(Phi) the recurrence on L(A_j) goes through.
enum class PhiNorm { Length, Sup };

// |(Phi^-t)^[j](xi)| <= (1/j!) ((t+2j) deg Phi N(Phi) max(1,|xi|)^deg Phi)^j |Phi(xi)|^(-t-j),
// checked in the equivalent form |A_j(xi)| <= ((t+2j) deg Phi N(Phi) max(1,|xi|)^deg Phi)^j
// after dividing by the common positive factor |Phi(xi)|^(-t-j) / j!.
inline BoundReport inverse_power_bound(const IntPolynomial& phi, unsigned long t, unsigned long j, const PolarPoint& xi,
                                       PhiNorm norm = PhiNorm::Length, const PrecisionPolicy& policy = {}) {
  require(t >= 1 && !phi.is_zero(), "need t >= 1 and Phi nonzero");
  BoundReport rep("first_step.inverse_power_derivative",
                  {{"phi", polyz::to_json(phi)},
                   {"t", t},
                   {"j", j},
                   {"xi", xi.to_string()},
                   {"norm", norm == PhiNorm::Length ? "length" : "sup"}});
  if (!numeric::certainly_positive(numeric::abs_value_at(phi, xi), policy)) fail(ErrorKind::Precondition, "Phi vanishes at xi");
  IntPolynomial a = inverse_power_numerator(phi, t, j);
  Real lhs = a.is_constant() ? Real(Rat(abs(a.coeff(0)))) : numeric::abs_value_at(a, xi);
  long dphi = phi.degree();
  Int n_phi = norm == PhiNorm::Length ? phi.length() : phi.sup_norm();
  Real base = Real(Int(Int((t + 2 * j) * dphi) * n_phi)) * pow(max(Real(1), xi.modulus()), Rat(dphi));
  rep.check(lhs, pow(base, Rat(static_cast<long>(j))), numeric::Relation::LE, policy);
  return rep.finish();
}

// For P = P0 T^r Phi^t (Phi cyclotomic, deg P <= n, t <= n) and Phi(xi) != 0:
// max_{j<2t-1} |P0^[j](xi)| <= e^(10n) max(|xi|,1/|xi|)^(3n) min(1,|Phi(xi)|)^(-3t) max_{j<2t-1} |P^[j](xi)|
inline BoundReport cofactor_derivative_bound(const cyclo::CycloSplit& s, unsigned long n, const PolarPoint& xi,
                                             const PrecisionPolicy& policy = {}) {
  IntPolynomial P = s.expand();
  if (s.t < 1 || s.t > n || static_cast<unsigned long>(P.degree()) > n) fail(ErrorKind::Precondition, "need 1 <= t <= n and deg P <= n");
  if (!cyclo::is_cyclotomic(s.phi)) fail(ErrorKind::Precondition, "Phi is not cyclotomic");
  BoundReport rep("first_step.cofactor_derivatives", {{"split", s.to_json()}, {"n", n}, {"xi", xi.to_string()}});
  Real phix = numeric::abs_value_at(s.phi, xi);
  if (!numeric::certainly_positive(phix, policy)) fail(ErrorKind::Precondition, "Phi vanishes at xi");
  std::vector<Real> l, r;
  for (unsigned long j = 0; j + 1 < 2 * s.t; ++j) {
    l.push_back(numeric::abs_value_at(s.p0, xi, j));
    r.push_back(numeric::abs_value_at(P, xi, j));
  }
  long nn = static_cast<long>(n), tt = static_cast<long>(s.t);
  Real mod = xi.modulus();
  Real rhs = exp(Real(10 * nn)) * pow(max(mod, Real(1) / mod), Rat(3 * nn)) * pow(min(Real(1), phix), Rat(-3 * tt)) * max(r);
  rep.check(max(l), rhs, numeric::Relation::LE, policy);
  return rep.finish();
}

// For F = P(T^a): max_{j<t} |F^[j](xi)| <= (2+|xi|)^(at) max_{j<t} |P^[j](xi^a)|
inline BoundReport power_transfer_bound(const IntPolynomial& p, unsigned long a, unsigned long t, const PolarPoint& xi,
                                        const PrecisionPolicy& policy = {}) {
  require(a >= 1 && t >= 1, "need a, t >= 1");
  BoundReport rep("first_step.power_transfer", {{"P", polyz::to_json(p)}, {"a", a}, {"t", t}, {"xi", xi.to_string()}});
  IntPolynomial F = p.compose_power(a);
  PolarPoint xa = xi.pow(static_cast<long>(a));
  std::vector<Real> l, r;
  for (unsigned long j = 0; j < t; ++j) {
    l.push_back(numeric::abs_value_at(F, xi, j));
    r.push_back(numeric::abs_value_at(p, xa, j));
  }
  Real rhs = pow(Real(2) + xi.modulus(), Rat(static_cast<long>(a * t))) * max(r);
  rep.check(max(l), rhs, numeric::Relation::LE, policy);
  return rep.finish();
}

struct FirstStepStats {
  Real c_E, delta_Phi, delta_P;
  unsigned long M = 0, n = 0, t = 0;
  Rat log_X;

  nlohmann::json to_json(const PrecisionPolicy& policy = {}) const {
    auto enc = [&](const Real& x) { return ComplexEnclosure(numeric::enclose_escalating(x, policy)).to_json(); };
    return {{"c_E", enc(c_E)}, {"delta_Phi", enc(delta_Phi)}, {"delta_P", enc(delta_P)},
            {"M", M}, {"n", n}, {"t", t}, {"log_X", log_X.get_str()}};
  }
};

struct FirstStepResult {
  IntPolynomial Q;
  cyclo::CycloSplit split;
  FirstStepStats stats;
  BoundReport report;
};

// For P = P0 T^r Phi^t (maximal split), Q = gcd{P0^[j](T^a) : a in A, j < t}
// satisfies prod_{xi in E} |Q(xi)|/cont Q <= X^(5Mn/t) Delta_E^(-t) (delta_P / min(1, delta_Phi)^(3t))^|E|
// under t|E| <= Mn <= (1/10) log X and (2 + c_E)^(20 t |E|) <= X. X is given by log X.
inline FirstStepResult first_step(unsigned long M, unsigned long n, unsigned long t, const Rat& log_X, const Exponents& A,
                                  const std::vector<PolarPoint>& E, const IntPolynomial& p, const PrecisionPolicy& policy = {}) {
  if (t < 1 || t > n) fail(ErrorKind::Precondition, "need 1 <= t <= n");
  if (p.is_zero() || static_cast<unsigned long>(p.degree()) > n) fail(ErrorKind::Precondition, "need P nonzero with deg P <= n");
  if (A.empty() || E.empty()) fail(ErrorKind::Precondition, "A and E must be non-empty");
  for (auto a : A)
    if (a < 1 || a > M) fail(ErrorKind::Precondition, "A must lie in {1, ..., M}");
  for (size_t i = 0; i < E.size(); ++i) {
    if (E[i].is_torsion()) fail(ErrorKind::Precondition, "E contains a root of unity: " + E[i].to_string());
    for (size_t j = 0; j < i; ++j)
      if (E[i] == E[j]) fail(ErrorKind::Precondition, "E has repeated points");
  }
  FirstStepResult out;
  out.split = cyclo::cyclo_split(p, t);
  FirstStepStats& st = out.stats;
  st.M = M;
  st.n = n;
  st.t = t;
  st.log_X = log_X;
  st.c_E = max_distortion(E);

  auto hyp = [&](const Real& l, const Real& r, const std::string& what) {
    if (numeric::certify(l, r, numeric::Relation::LE, policy).verdict != Verdict::VERIFIED)
      fail(ErrorKind::Hypothesis, "hypothesis not certified: " + what);
  };
  Int Mn = Int(M) * Int(n);
  hyp(Real(Int(t * E.size())), Real(Mn), "t|E| <= Mn");
  hyp(Real(Mn), Real(log_X / 10), "Mn <= (1/10) log X");
  hyp(Real(Int(20 * t * E.size())) * log(Real(2) + st.c_E), Real(log_X), "(2 + c_E)^(20 t |E|) <= X");
  hyp(log(Real(p.height())), Real(log_X), "H(P) <= X");

  std::vector<Real> phis, ps;
  for (auto a : A)
    for (auto& xi : E) {
      PolarPoint xa = xi.pow(static_cast<long>(a));
      phis.push_back(numeric::abs_value_at(out.split.phi, xa));
      for (unsigned long j = 0; j + 1 < 2 * t; ++j) ps.push_back(numeric::abs_value_at(p, xa, j));
    }
  st.delta_Phi = phis.size() == 1 ? phis[0] : min(phis);
  st.delta_P = ps.size() == 1 ? ps[0] : max(ps);

  out.Q = gcd_derivative_family(out.split.p0, A, t);
  BoundReport rep("first_step.product", {{"M", M}, {"n", n}, {"t", t}, {"log_X", log_X.get_str()}, {"A", exps_json(A)}});
  rep.params["P"] = polyz::to_json(p);
  rep.params["Q"] = polyz::to_json(out.Q);
  if (!numeric::certainly_positive(st.delta_Phi, policy)) rep.inconclusive("delta_Phi > 0 not certified");

  std::vector<SamplePoint> pts(E.begin(), E.end());
  Real lhs(1);
  for (auto& xi : E) lhs = lhs * numeric::abs_value_at(out.Q, xi) / Real(out.Q.content());
  long tt = static_cast<long>(t), e = static_cast<long>(E.size());
  Real rhs = exp(Real(Rat(5) * Rat(Mn) / tt * log_X)) * pow(delta_E(pts), Rat(-tt)) *
             pow(st.delta_P / pow(min(Real(1), st.delta_Phi), Rat(3 * tt)), Rat(e));
  rep.check(lhs, rhs, numeric::Relation::LE, policy);
  out.report = rep.finish();
  return out;
}

struct LinearizeResult {
  IntPolynomial S;
  IntPolynomial R;   // the irreducible factor selected
  unsigned long k = 0;  // S = R^k
  IntPolynomial Q;   // gcd{q1^[j] : j < t}
  BoundReport report;
};

// phi(F) = prod_{xi in E} |F(xi)|
inline Real valuation(const IntPolynomial& f, const std::vector<SamplePoint>& E) {
  Real v(1);
  for (auto& x : E) v = v * x.abs_value(f);
  return v;
}

// A primary S with deg S <= d/t, H(S) <= Y^(2/t) and phi(S) <= delta^(1/(6t)),
// built as a power of an irreducible factor R of Q = gcd{q1^[j] : j < t} with
// phi(R) <= (Y^deg R H(R)^d)^(-eta), delta = Y^(-3 d eta).
inline LinearizeResult linearize(const IntPolynomial& q1, unsigned long t, const Rat& d, const Real& Y,
                                 const std::vector<SamplePoint>& E, const Real& delta, const PrecisionPolicy& policy = {}) {
  if (t < 1) fail(ErrorKind::Precondition, "need t >= 1");
  if (q1.is_zero()) fail(ErrorKind::Precondition, "q1 must be nonzero");
  if (E.empty()) fail(ErrorKind::Precondition, "E must be non-empty");
  auto pre = [&](const Real& l, const Real& r, numeric::Relation rel, const std::string& what) {
    if (numeric::certify(l, r, rel, policy).verdict != Verdict::VERIFIED) fail(ErrorKind::Precondition, "not certified: " + what);
  };
  pre(Real(0), delta, numeric::Relation::LT, "delta > 0");
  pre(delta, Real(1), numeric::Relation::LT, "delta < 1");
  pre(exp(Real(d)), Y, numeric::Relation::LE, "e^d <= Y");
  if (Rat(q1.degree()) > d) fail(ErrorKind::Precondition, "deg q1 exceeds d");
  pre(Real(q1.height()), Y, numeric::Relation::LE, "H(q1) <= Y");

  LinearizeResult out;
  std::vector<IntPolynomial> ders;
  for (unsigned long j = 0; j < t; ++j) {
    IntPolynomial dj = q1.divided_derivative(j);
    if (!dj.is_zero()) ders.push_back(dj);
  }
  out.Q = ders.size() == 1 ? ders[0].normalized_sign() : polyz::gcd_set(ders);
  pre(valuation(out.Q, E), delta, numeric::Relation::LE, "phi(Q) <= delta");

  BoundReport rep("gcd.linearize", {{"q1", polyz::to_json(q1)}, {"t", t}, {"d", d.get_str()}, {"E", points_json(E)}});
  rep.params["Q"] = polyz::to_json(out.Q);
  // eta = -log delta / (3 d log Y); the selection inequality in log form:
  // log phi(R) <= (deg R log Y + d log H(R)) log delta / (3 d log Y)
  Real logY = log(Y), logd = log(delta);
  std::optional<IntPolynomial> chosen;
  for (auto& [R, e] : polyz::factor_irreducible(out.Q).factors) {
    (void)e;
    Real exponent = (Real(R.degree()) * logY + Real(d) * log(Real(R.height()))) / (Real(3) * Real(d) * logY);
    Real bound = exp(exponent * logd);
    if (numeric::certify(valuation(R, E), bound, numeric::Relation::LE, policy).verdict == Verdict::VERIFIED) {
      chosen = R;
      break;
    }
  }
  if (!chosen) {
    rep.inconclusive("no irreducible factor certified the selection inequality");
    out.report = rep.finish();
    return out;
  }
  out.R = *chosen;
  rep.params["R"] = polyz::to_json(out.R);
  // largest k with deg R^k <= d/t and H(R^k) <= Y^(2/t)
  Rat dmax = d / Rat(static_cast<long>(t));
  Real hmax = pow(Y, Rat(2) / Rat(static_cast<long>(t)));
  IntPolynomial S = out.R;
  unsigned long k = 1;
  while (true) {
    IntPolynomial next = S * out.R;
    if (Rat(next.degree()) > dmax) break;
    if (numeric::certify(Real(next.height()), hmax, numeric::Relation::LE, policy).verdict != Verdict::VERIFIED) break;
    S = next;
    ++k;
  }
  out.S = S;
  out.k = k;
  rep.params["S"] = polyz::to_json(S);
  rep.params["k"] = k;
  if (!polyz::is_primary(S)) rep.fail_with("S is not primary");
  rep.check(Real(S.degree()), Real(dmax), numeric::Relation::LE, policy);
  rep.check(Real(S.height()), hmax, numeric::Relation::LE, policy);
  rep.check(valuation(S, E), pow(delta, Rat(1) / Rat(6 * static_cast<long>(t))), numeric::Relation::LE, policy);
  out.report = rep.finish();
  return out;
}

// For a primary q without roots in Ctor u {0}, q(T^a1) and q(T^a2) are coprime.
inline BoundReport coprimality_primary(const IntPolynomial& q, unsigned long a1, unsigned long a2) {
  if (a1 < 1 || a2 < 1 || a1 == a2) fail(ErrorKind::Precondition, "need distinct positive exponents");
  if (q.is_zero() || !polyz::is_primary(q)) fail(ErrorKind::Precondition, "q is not primary");
  if (q.degree() > 0 && cyclo::has_torsion_or_zero_root(q)) fail(ErrorKind::Precondition, "q has a root at zero or at a root of unity");
  BoundReport rep("gcd.primary_coprimality", {{"q", polyz::to_json(q)}, {"a1", a1}, {"a2", a2}});
  IntPolynomial g = polyz::gcd_set({q.compose_power(a1), q.compose_power(a2)});
  rep.params["gcd"] = polyz::to_json(g);
  rep.check(Real(g.degree()), Real(0));
  if (q.degree() > 0 && g != IntPolynomial::constant(1)) rep.fail_with("gcd is not 1");
  return rep.finish();
}

// The largest divisor of p with no root in Ctor u {0}, made primitive.
inline IntPolynomial torsion_free_part(const IntPolynomial& p) {
  require(!p.is_zero(), "torsion-free part of the zero polynomial");
  IntPolynomial f = p.shift_down(p.zero_order());
  IntPolynomial rest;
  cyclo::cyclotomic_multiplicities(f, &rest);
  return rest.primitive_part().normalized_sign();
}

// ord_z(Q) = max(0, ord_z(Q1) - t + 1) for Q = gcd{P0^[j](T^a)} and
// Q1 = gcd{P1(T^a)}, P1 the torsion-free part of P; equivalently
// Q = gcd{Q1^[j] : j < t} up to content.
inline BoundReport multiplicity_identity(const IntPolynomial& p, const Exponents& A, unsigned long t) {
  BoundReport rep("gcd.multiplicity_identity", {{"P", polyz::to_json(p)}, {"A", exps_json(A)}, {"t", t}});
  cyclo::CycloSplit s = cyclo::cyclo_split(p, t);
  IntPolynomial Q = gcd_derivative_family(s.p0, A, t).primitive_part();
  IntPolynomial Q1 = gcd_power_family(torsion_free_part(p), A).primitive_part();
  rep.params["Q"] = polyz::to_json(Q);
  rep.params["Q1"] = polyz::to_json(Q1);
  std::map<IntPolynomial, long> mq, mq1;
  for (auto& [f, e] : polyz::factor_irreducible(Q).factors) mq[f] = e;
  for (auto& [f, e] : polyz::factor_irreducible(Q1).factors) mq1[f] = e;
  for (auto& [f, e] : mq1) {
    long want = std::max<long>(0, e - static_cast<long>(t) + 1);
    long got = mq.count(f) ? mq[f] : 0;
    rep.check(Real(got), Real(want));
    rep.check(Real(want), Real(got));
  }
  for (auto& [f, e] : mq)
    if (!mq1.count(f)) rep.fail_with("factor of Q missing from Q1: " + f.to_text());
  return rep.finish();
}

} // namespace smallval::gcdbounds
