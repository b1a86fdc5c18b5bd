#pragma once

// Integer polynomials of bounded degree and height with small values and
// derivatives on a grid of monomials xi_1^i_1 ... xi_m^i_m, found by lattice
// reduction and then certified.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smallval/linalg.hpp"
#include "smallval/numeric.hpp"
#include "smallval/point.hpp"
#include "smallval/polyz.hpp"
#include "smallval/report.hpp"

namespace smallval::auxpoly {

using numeric::BigFloat;
using numeric::ComplexEnclosure;
using numeric::PolarPoint;
using numeric::Prec;
using numeric::PrecisionPolicy;
using numeric::Real;
using numeric::Relation;
using numeric::Verdict;
using polyz::IntPolynomial;

struct SmallValueParams {
  long n = 1;
  std::vector<PolarPoint> xi;
  Rat sigma = 0, tau = 0, nu = 1, beta = 1;

  long m() const { return static_cast<long>(xi.size()); }
  // 0 <= i_k <= N and 0 <= j < J
  long N() const { return floor_pow(Int(n), sigma).get_si(); }
  long J() const { return ceil_pow(Int(n), tau).get_si(); }
  Real log_height_cap() const { return pow(Real(n), beta); }
  Real target() const { return exp(-pow(Real(n), nu)); }

  void validate() const {
    if (n < 1) fail(ErrorKind::Precondition, "need n >= 1");
    if (xi.empty()) fail(ErrorKind::Precondition, "need at least one point");
    if (sigma < 0 || tau < 0 || nu <= 0 || beta <= 0) fail(ErrorKind::Precondition, "need sigma, tau >= 0 and nu, beta > 0");
    if (J() > n + 1) fail(ErrorKind::Precondition, "n^tau exceeds n + 1: every P^[j] with j > n vanishes");
  }

  // m sigma + tau < 1 and beta > (m+1) sigma + tau, under which a solution is
  // guaranteed for large n; violations are reported, not rejected.
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (Rat(m()) * sigma + tau >= 1) w.push_back("m sigma + tau >= 1: existence is not guaranteed");
    if (beta <= Rat(m() + 1) * sigma + tau) w.push_back("beta <= (m+1) sigma + tau: existence is not guaranteed");
    return w;
  }

  std::vector<PolarPoint> grid() const {
    std::set<PolarPoint> pts;
    std::vector<Int> i(xi.size(), Int(0));
    long Nn = N();
    while (true) {
      pts.insert(numeric::monomial_point(xi, i));
      size_t k = 0;
      while (k < i.size() && i[k] == Nn) i[k++] = 0;
      if (k == i.size()) break;
      ++i[k];
    }
    return {pts.begin(), pts.end()};
  }

  nlohmann::json to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (auto& x : xi) pts.push_back(x.to_string());
    return {{"n", n}, {"xi", pts}, {"sigma", sigma.get_str()}, {"tau", tau.get_str()},
            {"nu", nu.get_str()}, {"beta", beta.get_str()}, {"N", N()}, {"J", J()}};
  }
};

// P != 0, deg P <= n, log H(P) <= n^beta and |P^[j](z)| < exp(-n^nu) for all
// grid points z and j < J.
inline BoundReport verify_small_values(const IntPolynomial& p, const SmallValueParams& prm, const PrecisionPolicy& policy = {}) {
  prm.validate();
  BoundReport rep("harness.small_value_poly", prm.to_json());
  rep.params["P"] = polyz::to_json(p);
  if (p.is_zero()) {
    rep.fail_with("P is zero");
    return rep.finish();
  }
  if (p.degree() > prm.n) rep.fail_with("deg P exceeds n");
  rep.check(log(Real(p.height())), prm.log_height_cap(), Relation::LE, policy);
  Real target = prm.target();
  for (auto& z : prm.grid())
    for (long j = 0; j < prm.J(); ++j) rep.check(numeric::abs_value_at(p, z, j), target, Relation::LT, policy);
  return rep.finish();
}

enum class ConstructStatus { FOUND, NOT_FOUND, INCONCLUSIVE };

inline const char* to_string(ConstructStatus s) {
  return s == ConstructStatus::FOUND ? "FOUND" : s == ConstructStatus::NOT_FOUND ? "NOT_FOUND" : "INCONCLUSIVE";
}

struct ConstructResult {
  ConstructStatus status = ConstructStatus::NOT_FOUND;
  std::optional<IntPolynomial> P;
  BoundReport report;
  std::vector<std::string> warnings;
  long scale_bits = 0;
  std::string note;

  nlohmann::json to_json() const {
    nlohmann::json j = {{"status", to_string(status)}, {"warnings", warnings}, {"scale_bits", scale_bits}};
    if (P) j["P"] = polyz::to_json(*P);
    if (report.checks > 0 || !report.note.empty()) j["report"] = report.to_json();
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

namespace detail {

inline bool is_real_point(const PolarPoint& z) {
  return z.radians() == 0 && (z.turns() == 0 || z.turns() == Rat(1, 2));
}

inline Int scaled_round(const BigFloat& x, long w) {
  Rat q = x.to_rational();
  Int scale = ipow(Int(2), static_cast<unsigned long>(w));
  return round_of(q * scale);
}

// Rows: coefficient unknowns c_0..c_n, each carrying a unit height column
// followed by 2^w-scaled real and imaginary parts of (T^k)^[j](z).
inline linalg::IntMat value_lattice(const SmallValueParams& prm, const std::vector<PolarPoint>& pts, long w) {
  long n = prm.n;
  linalg::IntMat rows(n + 1);
  for (long k = 0; k <= n; ++k) {
    rows[k].assign(n + 1, Int(0));
    rows[k][k] = 1;
  }
  for (auto& z : pts) {
    bool real = is_real_point(z);
    // enough bits for 2^w |z|^n
    double lg = std::max(0.0, numeric::enclose_escalating(z.log_modulus(), {}).mid_double() / std::log(2.0));
    Prec prec = static_cast<Prec>(w + lg * n + 64 + n);
    for (long j = 0; j < prm.J(); ++j) {
      std::vector<Int> re(n + 1, Int(0)), im(n + 1, Int(0));
      for (long k = j; k <= n; ++k) {
        ComplexEnclosure v = z.pow(k - j).enclose(prec);
        Int c = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j));
        re[k] = c * scaled_round(v.re().mid(), w);
        im[k] = c * scaled_round(v.im().mid(), w);
      }
      for (long k = 0; k <= n; ++k) {
        rows[k].push_back(re[k]);
        if (!real) rows[k].push_back(im[k]);
      }
    }
  }
  return rows;
}

} // namespace detail

// Tries scales 2^w from an estimate of the needed weight upwards; every
// reduced basis vector is a candidate, certified by verify_small_values.
inline ConstructResult construct_small_value_poly(const SmallValueParams& prm, const PrecisionPolicy& policy = {}) {
  prm.validate();
  ConstructResult out;
  out.warnings = prm.warnings();
  std::vector<PolarPoint> pts = prm.grid();

  double target_bits = numeric::enclose_escalating(pow(Real(prm.n), prm.nu), policy).mid_double() / std::log(2.0);
  // with e real conditions on n + 1 unknowns a reduced vector has size about
  // 2^(w e / (n + 1)), so its values are near 2^(-w (n + 1 - e) / (n + 1))
  long eqs = 0;
  for (auto& z : pts) eqs += (detail::is_real_point(z) ? 1 : 2) * prm.J();
  long base = static_cast<long>(std::ceil(target_bits)) + 8;
  if (eqs < prm.n + 1) {
    long guess = static_cast<long>(std::ceil(target_bits * (prm.n + 1) / double(prm.n + 1 - eqs))) + 8;
    if (guess + 64 <= static_cast<long>(policy.max_bits)) base = guess;
  }
  if (base + 64 > static_cast<long>(policy.max_bits)) {
    out.note = "target exp(-n^nu) lies below the maximal working precision";
    return out;
  }
  bool inconclusive = false;
  for (long extra = 8; base + extra + 64 <= static_cast<long>(policy.max_bits) && extra <= 4096; extra *= 2) {
    long w = base + extra;
    linalg::IntMat red = linalg::lll_reduce(detail::value_lattice(prm, pts, w));
    for (auto& row : red) {
      std::vector<Int> c(row.begin(), row.begin() + prm.n + 1);
      IntPolynomial p(c);
      if (p.is_zero()) continue;
      p = p.normalized_sign();
      BoundReport rep = verify_small_values(p, prm, policy);
      if (rep.verified()) {
        out.status = ConstructStatus::FOUND;
        out.P = p;
        out.report = rep;
        out.scale_bits = w;
        return out;
      }
      inconclusive = inconclusive || rep.verdict == Verdict::INCONCLUSIVE;
    }
  }
  if (inconclusive) {
    out.status = ConstructStatus::INCONCLUSIVE;
    out.note = "some candidates could not be certified within the precision limit";
  } else {
    out.note = "no reduced basis vector satisfies the bounds";
  }
  return out;
}

} // namespace smallval::auxpoly
