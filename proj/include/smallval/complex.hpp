#pragma once

#include <json.hpp>

#include "smallval/interval.hpp"

namespace smallval::numeric {

// Rectangular complex enclosure with dyadic endpoints.
class ComplexEnclosure {
public:
  explicit ComplexEnclosure(Prec prec = 128) : re_(prec), im_(prec) {}
  ComplexEnclosure(RealInterval re, RealInterval im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexEnclosure(RealInterval re) : re_(std::move(re)), im_(re_.prec()) {}

  static ComplexEnclosure of(const Rat& re, const Rat& im, Prec prec) {
    return {RealInterval::of(re, prec), RealInterval::of(im, prec)};
  }
  static ComplexEnclosure of(const Rat& re, Prec prec) { return of(re, Rat(0), prec); }

  const RealInterval& re() const { return re_; }
  const RealInterval& im() const { return im_; }
  const BigFloat& re_lo() const { return re_.lo(); }
  const BigFloat& re_hi() const { return re_.hi(); }
  const BigFloat& im_lo() const { return im_.lo(); }
  const BigFloat& im_hi() const { return im_.hi(); }
  Prec precision_bits() const { return std::max(re_.prec(), im_.prec()); }

  bool is_real() const { return im_.lo().is_zero() && im_.hi().is_zero(); }
  bool contains(const Rat& re, const Rat& im) const { return re_.contains(re) && im_.contains(im); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool intersects(const ComplexEnclosure& o) const { return re_.intersects(o.re_) && im_.intersects(o.im_); }

  friend ComplexEnclosure operator+(const ComplexEnclosure& a, const ComplexEnclosure& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ComplexEnclosure operator-(const ComplexEnclosure& a, const ComplexEnclosure& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ComplexEnclosure operator-(const ComplexEnclosure& a) { return {-a.re_, -a.im_}; }
  friend ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b) {
    if (b.is_real()) return {a.re_ * b.re_, a.im_ * b.re_};
    if (a.is_real()) return {a.re_ * b.re_, a.re_ * b.im_};
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend ComplexEnclosure operator*(const RealInterval& s, const ComplexEnclosure& a) {
    return {s * a.re_, s * a.im_};
  }
  friend ComplexEnclosure operator/(const ComplexEnclosure& a, const ComplexEnclosure& b) {
    RealInterval den = sqr(b.re_) + sqr(b.im_);
    RealInterval re = a.re_ * b.re_ + a.im_ * b.im_;
    RealInterval im = a.im_ * b.re_ - a.re_ * b.im_;
    return {re / den, im / den};
  }
  ComplexEnclosure& operator+=(const ComplexEnclosure& o) { return *this = *this + o; }
  ComplexEnclosure& operator*=(const ComplexEnclosure& o) { return *this = *this * o; }

  ComplexEnclosure conj() const { return {re_, -im_}; }
  RealInterval abs2() const { return sqr(re_) + sqr(im_); }
  RealInterval abs() const {
    if (is_real()) return smallval::numeric::abs(re_);
    return sqrt(abs2());
  }

  ComplexEnclosure pow(unsigned long e) const {
    ComplexEnclosure result(RealInterval::of(1L, precision_bits()));
    ComplexEnclosure base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  nlohmann::json to_json() const {
    return {{"re_lo", re_.lo().to_decimal()},
            {"re_hi", re_.hi().to_decimal()},
            {"im_lo", im_.lo().to_decimal()},
            {"im_hi", im_.hi().to_decimal()},
            {"precision_bits", static_cast<long>(precision_bits())}};
  }

  std::string to_string() const {
    if (is_real()) return re_.to_string();
    return re_.to_string() + " + i" + im_.to_string();
  }

private:
  RealInterval re_, im_;
};

inline Verdict certified_compare(const ComplexEnclosure& a, const ComplexEnclosure& b,
                                 Relation rel = Relation::LE) {
  require(a.is_real() && b.is_real(), "certified_compare needs real enclosures");
  return certified_compare(a.re(), b.re(), rel);
}

} // namespace smallval::numeric
