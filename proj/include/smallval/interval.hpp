#pragma once

// Outward-rounded interval arithmetic on MPFR numbers.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "smallval/arith.hpp"

namespace smallval::numeric {

using Prec = mpfr_prec_t;

// The MPFR exponent range is thread-local: every thread doing enclosure
// arithmetic calls this first. The main thread is covered at load time.
inline void widen_exponent_range() {
  mpfr_set_emax(mpfr_get_emax_max());
  mpfr_set_emin(mpfr_get_emin_min());
}

namespace detail {
inline const bool exponent_range_widened = [] {
  widen_exponent_range();
  return true;
}();
} // namespace detail

class BigFloat {
public:
  explicit BigFloat(Prec prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Prec prec() const { return mpfr_get_prec(v_); }
  bool is_inf() const { return mpfr_inf_p(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  // Exact decimal expansion of the dyadic value; "inf"/"-inf" for infinities.
  std::string to_decimal() const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    if (e >= 0) return Int(m << static_cast<unsigned long>(e)).get_str(10);
    // strip factors of two so the expansion is as short as possible
    unsigned long tz = mpz_scan1(m.get_mpz_t(), 0);
    unsigned long shift = static_cast<unsigned long>(-e);
    unsigned long drop = std::min(tz, shift);
    m >>= drop;
    shift -= drop;
    if (shift == 0) return m.get_str(10);
    Int scaled = m * ipow(Int(5), shift);
    bool neg = scaled < 0;
    std::string digits = Int(abs(scaled)).get_str(10);
    if (digits.size() <= shift) digits = std::string(shift - digits.size() + 1, '0') + digits;
    std::string out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
    return neg ? "-" + out : out;
  }

  // Exact value as a rational (finite values only).
  Rat to_rational() const {
    require(mpfr_number_p(v_), "to_rational of a non-finite value");
    if (mpfr_zero_p(v_)) return 0;
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat q(m);
    if (e >= 0)
      q *= ipow(Int(2), static_cast<unsigned long>(e));
    else
      q /= ipow(Int(2), static_cast<unsigned long>(-e));
    q.canonicalize();
    return q;
  }

private:
  mpfr_t v_;
};

class RealInterval {
public:
  explicit RealInterval(Prec prec = 128) : lo_(prec), hi_(prec) {}

  static RealInterval of(long v, Prec prec) {
    RealInterval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }
  static RealInterval of(const Int& v, Prec prec) {
    RealInterval r(prec);
    mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static RealInterval of(const Rat& v, Prec prec) {
    RealInterval r(prec);
    mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static RealInterval bounds(const Rat& lo, const Rat& hi, Prec prec) {
    require(lo <= hi, "interval bounds out of order");
    RealInterval r(prec);
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static RealInterval hull(const BigFloat& lo, const BigFloat& hi) {
    RealInterval r(std::max(lo.prec(), hi.prec()));
    mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    return r;
  }
  static RealInterval pi(Prec prec) {
    RealInterval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }
  static RealInterval infinity(int sign, Prec prec) {
    RealInterval r(prec);
    mpfr_set_inf(r.lo_.get(), sign);
    mpfr_set_inf(r.hi_.get(), sign);
    return r;
  }

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  Prec prec() const { return std::max(lo_.prec(), hi_.prec()); }

  bool contains(const Rat& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
  }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool is_point() const { return lo_ == hi_; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }
  bool intersects(const RealInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool subset_of(const RealInterval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }

  BigFloat width() const {
    BigFloat w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
  }
  BigFloat mid() const {
    BigFloat m(prec() + 2);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }
  double mid_double() const { return mid().to_double(); }

  friend RealInterval operator-(const RealInterval& a) {
    RealInterval r(a.prec());
    mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    Prec p = std::max(a.prec(), b.prec());
    RealInterval r(p);
    // sign-case analysis avoids 0 * inf where possible
    if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) {
      mul_rnd(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
      mul_rnd(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
      return r;
    }
    BigFloat t(p);
    const BigFloat* as[2] = {&a.lo_, &a.hi_};
    const BigFloat* bs[2] = {&b.lo_, &b.hi_};
    bool first = true;
    for (auto x : as)
      for (auto y : bs) {
        mul_rnd(t, *x, *y, MPFR_RNDD);
        if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mul_rnd(t, *x, *y, MPFR_RNDU);
        if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) fail(ErrorKind::Inconclusive, "interval division by an interval containing zero");
    RealInterval inv(b.prec());
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
  }
  RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
  RealInterval& operator-=(const RealInterval& o) { return *this = *this - o; }
  RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }

  RealInterval mul_2si(long k) const {
    RealInterval r = *this;
    mpfr_mul_2si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_mul_2si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
    return r;
  }

  friend RealInterval sqr(const RealInterval& a) {
    RealInterval r(a.prec());
    if (a.lo_.sign() >= 0) {
      mpfr_sqr(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
      mpfr_sqr(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    } else if (a.hi_.sign() <= 0) {
      mpfr_sqr(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
      mpfr_sqr(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    } else {
      mpfr_set_zero(r.lo_.get(), 1);
      BigFloat t(a.prec());
      mpfr_sqr(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
      mpfr_sqr(t.get(), a.hi_.get(), MPFR_RNDU);
      if (t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
    }
    return r;
  }
  friend RealInterval abs(const RealInterval& a) {
    if (a.lo_.sign() >= 0) return a;
    if (a.hi_.sign() <= 0) return -a;
    RealInterval r(a.prec());
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    if (a.hi_ > r.hi_) mpfr_set(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  // Square root of the nonnegative part.
  friend RealInterval sqrt(const RealInterval& a) {
    if (a.hi_.sign() < 0) fail(ErrorKind::Precondition, "square root of a negative interval");
    RealInterval r(a.prec());
    if (a.lo_.sign() <= 0)
      mpfr_set_zero(r.lo_.get(), 1);
    else
      mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval exp(const RealInterval& a) {
    RealInterval r(a.prec());
    mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  // Logarithm of the nonnegative part; log 0 = -inf.
  friend RealInterval log(const RealInterval& a) {
    if (a.hi_.sign() < 0) fail(ErrorKind::Precondition, "logarithm of a negative interval");
    RealInterval r(a.prec());
    if (a.lo_.sign() <= 0)
      mpfr_set_inf(r.lo_.get(), -1);
    else
      mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    if (a.hi_.sign() <= 0)
      mpfr_set_inf(r.hi_.get(), -1);
    else
      mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval pow(const RealInterval& a, unsigned long e) {
    if (e == 0) return RealInterval::of(1L, a.prec());
    if (e % 2 == 0) return pow(sqr(a), e / 2);
    RealInterval r(a.prec());
    mpfr_pow_ui(r.lo_.get(), a.lo_.get(), e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), a.hi_.get(), e, MPFR_RNDU);
    return r;
  }
  friend RealInterval max(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval min(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  // cos and sin via the 1-Lipschitz bound around the lower endpoint.
  friend RealInterval cos(const RealInterval& a) { return trig(a, true); }
  friend RealInterval sin(const RealInterval& a) { return trig(a, false); }

  RealInterval intersect(const RealInterval& o) const {
    RealInterval r(std::max(prec(), o.prec()));
    mpfr_max(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    if (r.hi_ < r.lo_) fail(ErrorKind::Internal, "empty interval intersection");
    return r;
  }

  std::string to_string() const { return "[" + lo_.to_decimal() + ", " + hi_.to_decimal() + "]"; }

private:
  static void mul_rnd(BigFloat& out, const BigFloat& x, const BigFloat& y, mpfr_rnd_t rnd) {
    if ((x.is_zero() && y.is_inf()) || (x.is_inf() && y.is_zero()))
      mpfr_set_zero(out.get(), 1);
    else
      mpfr_mul(out.get(), x.get(), y.get(), rnd);
  }
  static RealInterval trig(const RealInterval& a, bool is_cos) {
    Prec p = a.prec();
    RealInterval r(p);
    BigFloat w = a.width();
    auto f = is_cos ? mpfr_cos : mpfr_sin;
    f(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    f(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    mpfr_sub(r.lo_.get(), r.lo_.get(), w.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), r.hi_.get(), w.get(), MPFR_RNDU);
    if (mpfr_cmp_si(r.lo_.get(), -1) < 0) mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_.get(), 1) > 0) mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
    return r;
  }

  BigFloat lo_, hi_;
};

RealInterval sqr(const RealInterval& a);
RealInterval abs(const RealInterval& a);
RealInterval sqrt(const RealInterval& a);
RealInterval exp(const RealInterval& a);
RealInterval log(const RealInterval& a);
RealInterval pow(const RealInterval& a, unsigned long e);
RealInterval max(const RealInterval& a, const RealInterval& b);
RealInterval min(const RealInterval& a, const RealInterval& b);
RealInterval cos(const RealInterval& a);
RealInterval sin(const RealInterval& a);

enum class Verdict { VERIFIED, VIOLATED, INCONCLUSIVE };

inline const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::VERIFIED: return "VERIFIED";
  case Verdict::VIOLATED: return "VIOLATED";
  case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "VERIFIED") return Verdict::VERIFIED;
  if (s == "VIOLATED") return Verdict::VIOLATED;
  if (s == "INCONCLUSIVE") return Verdict::INCONCLUSIVE;
  fail(ErrorKind::Config, "unknown verdict '" + s + "'");
}

enum class Relation { LE, LT };

// a <= b (or a < b): decided only when the enclosures are ordered.
inline Verdict certified_compare(const RealInterval& a, const RealInterval& b, Relation rel = Relation::LE) {
  if (rel == Relation::LE) {
    if (a.hi() <= b.lo()) return Verdict::VERIFIED;
    if (a.lo() > b.hi()) return Verdict::VIOLATED;
  } else {
    if (a.hi() < b.lo()) return Verdict::VERIFIED;
    if (a.lo() >= b.hi()) return Verdict::VIOLATED;
  }
  return Verdict::INCONCLUSIVE;
}

} // namespace smallval::numeric
