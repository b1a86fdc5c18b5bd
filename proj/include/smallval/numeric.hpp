#pragma once

// Certified evaluation of polynomials and divided derivatives, Delta_E,
// certified root isolation and Mahler measures.

#include <algorithm>
#include <cmath>

#include "smallval/point.hpp"
#include "smallval/polyz.hpp"

namespace smallval::numeric {

using polyz::IntPolynomial;

// Enclosure of P^[j](z) by interval Horner evaluation at the precision of z.
inline ComplexEnclosure eval_dd_enclosure(const IntPolynomial& p, const ComplexEnclosure& z, size_t j = 0) {
  Prec prec = z.precision_bits();
  IntPolynomial d = j == 0 ? p : p.divided_derivative(j);
  ComplexEnclosure acc(prec);
  const auto& c = d.coeffs();
  if (z.is_real()) {
    RealInterval r(prec);
    for (size_t k = c.size(); k-- > 0;) r = r * z.re() + RealInterval::of(c[k], prec);
    return ComplexEnclosure(r, RealInterval(prec));
  }
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + ComplexEnclosure(RealInterval::of(c[k], prec), RealInterval(prec));
  return acc;
}

// |P^[j](xi)| as a lazily enclosed real; exact when xi is rational.
inline Real abs_value_at(const IntPolynomial& p, const PolarPoint& xi, size_t j = 0) {
  IntPolynomial d = j == 0 ? p : p.divided_derivative(j);
  if (xi.is_rational()) return Real(smallval::abs(d.eval(xi.rational_value())));
  if (xi.is_torsion() && !d.is_zero()) {
    // a primitive n-th root of unity is a root of d iff Phi_n divides d
    Int n = xi.torsion_order();
    require(n.fits_ulong_p(), "torsion order too large");
    IntPolynomial phi_n = polyz::cyclotomic_polynomial(n.get_ui());
    if (polyz::divides(phi_n, d)) return Real(0);
  }
  return Real::from([d, xi](Prec prec) { return eval_dd_enclosure(d, xi.enclose(prec), 0).abs(); });
}

namespace detail {

inline bool enclosure_less(const ComplexEnclosure& a, const ComplexEnclosure& b) {
  const BigFloat* ka[4] = {&a.re_lo(), &a.re_hi(), &a.im_lo(), &a.im_hi()};
  const BigFloat* kb[4] = {&b.re_lo(), &b.re_hi(), &b.im_lo(), &b.im_hi()};
  for (int i = 0; i < 4; ++i) {
    int c = cmp(*ka[i], *kb[i]);
    if (c) return c < 0;
  }
  return false;
}

} // namespace detail

// Delta_E = prod over ordered pairs of distinct points of |xi' - xi|^(1/2)
//         = prod over unordered pairs of |xi' - xi|.
// Points are sorted first so the result does not depend on input order.
inline RealInterval delta_E(std::vector<ComplexEnclosure> points) {
  require(!points.empty(), "delta_E of an empty set");
  Prec prec = 0;
  for (auto& p : points) prec = std::max(prec, p.precision_bits());
  std::sort(points.begin(), points.end(), detail::enclosure_less);
  RealInterval acc = RealInterval::of(1L, prec);
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      ComplexEnclosure diff = points[j] - points[i];
      if (diff.contains_zero()) fail(ErrorKind::Inconclusive, "overlapping enclosures in delta_E");
      acc = acc * diff.abs();
    }
  return acc;
}

// Delta_E of exact points as a lazily enclosed real. Points must be distinct.
inline Real delta_E(const std::vector<PolarPoint>& pts) {
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) require(pts[i] != pts[j], "delta_E needs distinct points");
  bool rational = std::all_of(pts.begin(), pts.end(), [](const PolarPoint& p) { return p.is_rational(); });
  if (rational) {
    Rat acc = 1;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) acc *= smallval::abs(Rat(pts[j].rational_value() - pts[i].rational_value()));
    return Real(acc);
  }
  return Real::from([pts](Prec prec) {
    std::vector<ComplexEnclosure> e;
    for (auto& p : pts) e.push_back(p.enclose(prec));
    return delta_E(e);
  });
}

namespace detail {

// Complex numbers with round-to-nearest, used only to compute approximations
// that are certified afterwards.
struct Cx {
  BigFloat re, im;
  explicit Cx(Prec p) : re(p), im(p) {}
};

inline void cx_mul(Cx& out, const Cx& a, const Cx& b, Prec p) {
  BigFloat t1(p), t2(p), r(p), i(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(i.get(), t1.get(), t2.get(), MPFR_RNDN);
  out.re = std::move(r);
  out.im = std::move(i);
}

inline void cx_div(Cx& out, const Cx& a, const Cx& b, Prec p) {
  BigFloat den(p), t1(p), t2(p), r(p), i(p);
  mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(r.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.get(), r.get(), den.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(i.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(i.get(), i.get(), den.get(), MPFR_RNDN);
  out.re = std::move(r);
  out.im = std::move(i);
}

inline void cx_add(Cx& out, const Cx& a, const Cx& b) {
  mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

inline void cx_sub(Cx& out, const Cx& a, const Cx& b) {
  mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

inline double cx_log2_abs(const Cx& a) {
  long e1 = 0, e2 = 0;
  double m1 = mpfr_zero_p(a.re.get()) ? 0 : std::fabs(mpfr_get_d_2exp(&e1, a.re.get(), MPFR_RNDN));
  double m2 = mpfr_zero_p(a.im.get()) ? 0 : std::fabs(mpfr_get_d_2exp(&e2, a.im.get(), MPFR_RNDN));
  double l1 = m1 > 0 ? std::log2(m1) + static_cast<double>(e1) : -1e300;
  double l2 = m2 > 0 ? std::log2(m2) + static_cast<double>(e2) : -1e300;
  double hi = std::max(l1, l2);
  return hi < -1e299 ? -1e300 : hi + 0.5 * std::log2(1 + std::exp2(2 * (std::min(l1, l2) - hi)));
}

// Aberth-Ehrlich simultaneous iteration on squarefree f of degree n >= 1.
inline std::vector<Cx> aberth(const IntPolynomial& f, Prec prec, std::vector<Cx> z) {
  size_t n = static_cast<size_t>(f.degree());
  std::vector<BigFloat> c;
  for (auto& v : f.coeffs()) {
    BigFloat b(prec);
    mpfr_set_z(b.get(), v.get_mpz_t(), MPFR_RNDN);
    c.push_back(std::move(b));
  }
  if (z.size() != n) {
    z.clear();
    // initial circle from the largest root-size estimate
    auto lg = [](const Int& v) {
      long e = 0;
      double m = mpz_get_d_2exp(&e, v.get_mpz_t());
      return std::log2(std::fabs(m)) + static_cast<double>(e);
    };
    double lcn = lg(f.leading()), radius_log2 = -60;
    for (size_t k = 0; k < n; ++k)
      if (f.coeff(k) != 0) radius_log2 = std::max(radius_log2, (lg(f.coeff(k)) - lcn) / static_cast<double>(n - k));
    for (size_t k = 0; k < n; ++k) {
      Cx p(prec);
      double ang = 2 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
      mpfr_set_d(p.re.get(), std::cos(ang), MPFR_RNDN);
      mpfr_set_d(p.im.get(), std::sin(ang), MPFR_RNDN);
      mpfr_mul_2si(p.re.get(), p.re.get(), static_cast<long>(std::ceil(radius_log2)), MPFR_RNDN);
      mpfr_mul_2si(p.im.get(), p.im.get(), static_cast<long>(std::ceil(radius_log2)), MPFR_RNDN);
      z.push_back(std::move(p));
    }
  } else {
    for (auto& p : z) {
      mpfr_prec_round(p.re.get(), prec, MPFR_RNDN);
      mpfr_prec_round(p.im.get(), prec, MPFR_RNDN);
    }
  }
  Cx fv(prec), dv(prec), N(prec), S(prec), t(prec), one(prec), w(prec);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  size_t max_iter = 200 + 10 * n + static_cast<size_t>(prec) / 8;
  double target = -static_cast<double>(prec) + 12;
  for (size_t it = 0; it < max_iter; ++it) {
    double worst = -1e300;
    for (size_t i = 0; i < n; ++i) {
      mpfr_set(fv.re.get(), c[n].get(), MPFR_RNDN);
      mpfr_set_zero(fv.im.get(), 1);
      mpfr_set_zero(dv.re.get(), 1);
      mpfr_set_zero(dv.im.get(), 1);
      for (size_t k = n; k-- > 0;) {
        cx_mul(dv, dv, z[i], prec);
        cx_add(dv, dv, fv);
        cx_mul(fv, fv, z[i], prec);
        mpfr_add(fv.re.get(), fv.re.get(), c[k].get(), MPFR_RNDN);
      }
      if (mpfr_zero_p(fv.re.get()) && mpfr_zero_p(fv.im.get())) continue;
      if (mpfr_zero_p(dv.re.get()) && mpfr_zero_p(dv.im.get())) {
        mpfr_nextabove(z[i].re.get());
        continue;
      }
      cx_div(N, fv, dv, prec);
      mpfr_set_zero(S.re.get(), 1);
      mpfr_set_zero(S.im.get(), 1);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        cx_sub(t, z[i], z[j]);
        if (mpfr_zero_p(t.re.get()) && mpfr_zero_p(t.im.get())) mpfr_nextabove(t.re.get());
        cx_div(t, one, t, prec);
        cx_add(S, S, t);
      }
      cx_mul(t, N, S, prec);
      cx_sub(t, one, t);
      cx_div(w, N, t, prec);
      cx_sub(z[i], z[i], w);
      double rel = cx_log2_abs(w) - std::max(0.0, cx_log2_abs(z[i]));
      worst = std::max(worst, rel);
    }
    if (worst < target) break;
  }
  return z;
}

struct RootDisc {
  ComplexEnclosure center; // point enclosure of the approximation
  RealInterval radius;     // certified: exactly one root lies within
};

// Certify approximations via Weierstrass-correction discs: the discs
// D(z_i, n |W_i|) contain all roots and each connected component of k discs
// contains k roots; pairwise disjoint discs therefore isolate the roots.
inline std::optional<std::vector<RootDisc>> certify_roots(const IntPolynomial& f, const std::vector<Cx>& z, Prec prec) {
  size_t n = z.size();
  std::vector<ComplexEnclosure> pts;
  for (auto& p : z) pts.emplace_back(RealInterval::hull(p.re, p.re), RealInterval::hull(p.im, p.im));
  ComplexEnclosure lc(RealInterval::of(f.leading(), prec), RealInterval(prec));
  std::vector<RootDisc> out;
  for (size_t i = 0; i < n; ++i) {
    ComplexEnclosure num = eval_dd_enclosure(f, pts[i], 0);
    ComplexEnclosure den = lc;
    for (size_t j = 0; j < n; ++j)
      if (j != i) den = den * (pts[i] - pts[j]);
    if (den.contains_zero()) return std::nullopt;
    ComplexEnclosure W = num / den;
    RealInterval r = W.abs() * RealInterval::of(static_cast<long>(n), prec);
    out.push_back({pts[i], RealInterval::hull(r.hi(), r.hi())});
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      RealInterval gap = (pts[i] - pts[j]).abs();
      if (!(gap.lo() > (out[i].radius + out[j].radius).hi())) return std::nullopt;
    }
  return out;
}

// Mahler measure of a squarefree primitive polynomial with nonzero constant term.
inline RealInterval mahler_squarefree(const IntPolynomial& f, const PrecisionPolicy& policy) {
  long n = f.degree();
  Prec out_prec = policy.initial_bits;
  if (n == 0) return RealInterval::of(Int(abs(f.leading())), out_prec);
  if (n == 1) return RealInterval::of(Int(std::max(Int(abs(f.coeff(0))), Int(abs(f.coeff(1))))), out_prec);
  std::vector<Cx> z;
  for (Prec prec = policy.initial_bits; prec <= policy.max_bits; prec *= 2) {
    z = aberth(f, prec, std::move(z));
    auto discs = certify_roots(f, z, prec);
    if (!discs) continue;
    RealInterval acc = RealInterval::of(Int(abs(f.leading())), prec);
    RealInterval one = RealInterval::of(1L, prec);
    for (auto& d : *discs) {
      RealInterval m = d.center.abs();
      BigFloat lo(prec), hi(prec);
      mpfr_sub(lo.get(), m.lo().get(), d.radius.hi().get(), MPFR_RNDD);
      mpfr_add(hi.get(), m.hi().get(), d.radius.hi().get(), MPFR_RNDU);
      if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
      acc = acc * max(one, RealInterval::hull(lo, hi));
    }
    return acc;
  }
  fail(ErrorKind::Inconclusive, "root isolation exhausted the precision cap");
}

} // namespace detail

// Certified isolating discs for the distinct roots of p.
inline std::vector<detail::RootDisc> isolate_roots(const IntPolynomial& p, const PrecisionPolicy& policy = {}) {
  require(p.degree() >= 1, "isolate_roots needs a nonconstant polynomial");
  std::vector<detail::RootDisc> out;
  for (auto& [s, mult] : polyz::detail::squarefree_parts(p.primitive_part())) {
    std::vector<detail::Cx> z;
    bool done = false;
    for (Prec prec = policy.initial_bits; prec <= policy.max_bits && !done; prec *= 2) {
      z = detail::aberth(s, prec, std::move(z));
      if (auto discs = detail::certify_roots(s, z, prec)) {
        out.insert(out.end(), discs->begin(), discs->end());
        done = true;
      }
    }
    if (!done) fail(ErrorKind::Inconclusive, "root isolation exhausted the precision cap");
  }
  return out;
}

// M(p) = |lead| prod max(1, |root|), as a real enclosure.
inline RealInterval mahler_measure(const IntPolynomial& p, const PrecisionPolicy& policy = {}) {
  require(!p.is_zero(), "Mahler measure of zero polynomial");
  IntPolynomial f = p.primitive_part();
  f = f.shift_down(f.zero_order());
  RealInterval acc = RealInterval::of(p.content(), policy.initial_bits);
  for (auto& [s, mult] : polyz::detail::squarefree_parts(f))
    acc = acc * pow(detail::mahler_squarefree(s, policy), mult);
  return acc;
}

inline ComplexEnclosure mahler_measure_enclosure(const IntPolynomial& p, const PrecisionPolicy& policy = {}) {
  RealInterval m = mahler_measure(p, policy);
  return ComplexEnclosure(m, RealInterval(m.prec()));
}

} // namespace smallval::numeric
