#pragma once

// Exactly represented nonzero complex points
//   xi = r * e^u * e^(2 pi i theta) * e^(i phi)
// with rational r > 0, u, theta in [0, 1), phi.  The family is closed under
// products and integer powers.  Since e^q and e^(iq) are transcendental for
// rational q != 0 (Lindemann), torsion, unit-modulus and algebraicity are
// decided exactly from the four rationals.

#include <cctype>
#include <optional>
#include <string>
#include <tuple>

#include "smallval/real.hpp"

namespace smallval::numeric {

class PolarPoint {
public:
  PolarPoint() = default;
  PolarPoint(Rat radius, Rat log_radius, Rat turns, Rat radians)
      : r_(std::move(radius)), u_(std::move(log_radius)), theta_(std::move(turns)), phi_(std::move(radians)) {
    require(r_ > 0, "point radius must be positive");
    normalize();
  }

  static PolarPoint rational(const Rat& q) {
    require(q != 0, "point must be nonzero");
    return PolarPoint(smallval::abs(q), 0, q < 0 ? Rat(1, 2) : Rat(0), 0);
  }
  static PolarPoint root_of_unity(const Int& k, const Int& n) {
    require(n >= 1, "root of unity needs positive order");
    return PolarPoint(1, 0, Rat(k, n), 0);
  }
  static PolarPoint exp_real(const Rat& u) { return PolarPoint(1, u, 0, 0); }
  static PolarPoint exp_imag(const Rat& phi) { return PolarPoint(1, 0, 0, phi); }

  const Rat& radius() const { return r_; }
  const Rat& log_radius() const { return u_; }
  const Rat& turns() const { return theta_; }
  const Rat& radians() const { return phi_; }

  friend PolarPoint operator*(const PolarPoint& a, const PolarPoint& b) {
    return PolarPoint(a.r_ * b.r_, a.u_ + b.u_, a.theta_ + b.theta_, a.phi_ + b.phi_);
  }
  PolarPoint pow(const Int& e) const {
    require(e.fits_slong_p(), "point exponent too large");
    long k = e.get_si();
    return PolarPoint(rpow(r_, k), u_ * e, theta_ * e, phi_ * e);
  }
  PolarPoint pow(long e) const { return pow(Int(e)); }
  PolarPoint inverse() const { return pow(-1L); }

  friend bool operator==(const PolarPoint& a, const PolarPoint& b) { return a.key() == b.key(); }
  friend bool operator!=(const PolarPoint& a, const PolarPoint& b) { return !(a == b); }
  friend bool operator<(const PolarPoint& a, const PolarPoint& b) { return a.key() < b.key(); }

  bool is_torsion() const { return r_ == 1 && u_ == 0 && phi_ == 0; }
  bool on_unit_circle() const { return r_ == 1 && u_ == 0; }
  bool is_algebraic() const { return u_ == 0 && phi_ == 0; }
  // Order when the point is a root of unity.
  Int torsion_order() const {
    require(is_torsion(), "torsion_order of a non-torsion point");
    return theta_.get_den();
  }
  bool is_rational() const { return is_algebraic() && (theta_ == 0 || theta_ == Rat(1, 2)); }
  Rat rational_value() const {
    require(is_rational(), "point is not rational");
    return theta_ == 0 ? r_ : Rat(-r_);
  }

  // |xi| as a real expression (exact when u = 0).
  Real modulus() const {
    if (u_ == 0) return Real(r_);
    return Real(r_) * exp(Real(u_));
  }
  // log |xi|
  Real log_modulus() const { return log(Real(r_)) + Real(u_); }
  // Exact comparison of |xi| with 1: sign of log|xi| when decidable from the rationals.
  int compare_modulus_with_one() const {
    if (u_ == 0) return r_ == 1 ? 0 : (r_ > 1 ? 1 : -1);
    if (r_ == 1) return u_ > 0 ? 1 : -1;
    // r != 1 and u != 0: r e^u = 1 would make e^u rational, impossible
    RealInterval lm = enclose_escalating(log_modulus());
    if (lm.positive()) return 1;
    if (lm.negative()) return -1;
    fail(ErrorKind::Inconclusive, "cannot separate |xi| from 1");
  }

  ComplexEnclosure enclose(Prec prec) const {
    RealInterval mod = u_ == 0 ? RealInterval::of(r_, prec) : RealInterval::of(r_, prec) * numeric::exp(RealInterval::of(u_, prec));
    if (phi_ == 0) {
      Rat q = theta_ * 4;
      if (q.get_den() == 1) {
        long quarter = q.get_num().get_si();
        RealInterval zero(prec);
        switch (quarter) {
        case 0: return ComplexEnclosure(mod, zero);
        case 1: return ComplexEnclosure(zero, mod);
        case 2: return ComplexEnclosure(-mod, zero);
        default: return ComplexEnclosure(zero, -mod);
        }
      }
    }
    Prec wp = prec + 16;
    RealInterval angle = RealInterval::pi(wp) * RealInterval::of(Rat(theta_ * 2), wp);
    if (phi_ != 0) angle = angle + RealInterval::of(phi_, wp);
    return ComplexEnclosure(mod * numeric::cos(angle), mod * numeric::sin(angle));
  }

  // Textual form accepted by parse(): factors joined by '*'.
  std::string to_string() const {
    std::string s = r_.get_str(10);
    if (u_ != 0) s += "*exp(" + u_.get_str(10) + ")";
    if (theta_ != 0) s += "*zeta(" + theta_.get_str(10) + ")";
    if (phi_ != 0) s += "*expi(" + phi_.get_str(10) + ")";
    return s;
  }

  // Grammar: ['-'] factor ('*' factor)*, factor = rational | e | i | exp(q) | expi(q) | zeta(q)
  static PolarPoint parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail(ErrorKind::Config, "empty point");
    PolarPoint out = rational(1);
    if (s[0] == '-' && (s.size() == 1 || !std::isdigit(static_cast<unsigned char>(s[1])))) {
      out = rational(-1);
      s.erase(0, 1);
    }
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t star = s.find('*', pos);
      std::string f = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
      out = out * parse_factor(f);
      if (star == std::string::npos) break;
      pos = star + 1;
    }
    return out;
  }

private:
  static PolarPoint parse_factor(const std::string& f) {
    auto arg = [&](const std::string& name) -> std::optional<Rat> {
      if (f.size() > name.size() + 2 && f.compare(0, name.size() + 1, name + "(") == 0 && f.back() == ')')
        return parse_rational(f.substr(name.size() + 1, f.size() - name.size() - 2));
      return std::nullopt;
    };
    if (f == "e") return exp_real(1);
    if (f == "i") return root_of_unity(1, 4);
    if (auto q = arg("exp")) return exp_real(*q);
    if (auto q = arg("expi")) return exp_imag(*q);
    if (auto q = arg("zeta")) return PolarPoint(1, 0, *q, 0);
    Rat q = parse_rational(f);
    if (q == 0) fail(ErrorKind::Config, "point must be nonzero");
    return rational(q);
  }

  void normalize() {
    r_.canonicalize();
    u_.canonicalize();
    phi_.canonicalize();
    theta_.canonicalize();
    Int fl = floor_of(theta_);
    theta_ -= fl;
    theta_.canonicalize();
  }
  std::tuple<const Rat&, const Rat&, const Rat&, const Rat&> key() const { return {r_, u_, theta_, phi_}; }

  Rat r_ = 1, u_ = 0, theta_ = 0, phi_ = 0;
};

// Product of xi_j^{i_j}.
inline PolarPoint monomial_point(const std::vector<PolarPoint>& xi, const std::vector<Int>& i) {
  require(xi.size() == i.size(), "exponent vector length mismatch");
  PolarPoint out;
  for (size_t k = 0; k < xi.size(); ++k) out = out * xi[k].pow(i[k]);
  return out;
}

} // namespace smallval::numeric
