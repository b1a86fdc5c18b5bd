#pragma once

// Dense univariate polynomials with arbitrary-precision integer coefficients.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smallval/arith.hpp"

namespace smallval::polyz {

class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPolynomial constant(const Int& v) { return IntPolynomial(std::vector<Int>{v}); }
  static IntPolynomial monomial(const Int& v, size_t k) {
    std::vector<Int> c(k + 1);
    c[k] = v;
    return IntPolynomial(std::move(c));
  }
  static IntPolynomial x() { return monomial(1, 1); }
  // T - v
  static IntPolynomial linear_root(const Int& v) { return IntPolynomial(std::vector<Int>{-v, 1}); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // -1 for the zero polynomial
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
  const Int& leading() const {
    require(!c_.empty(), "leading coefficient of zero polynomial");
    return c_.back();
  }
  const Int& constant_term_ref() const {
    require(!c_.empty(), "constant term of zero polynomial");
    return c_.front();
  }
  Int constant_term() const { return coeff(0); }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

  IntPolynomial operator-() const {
    IntPolynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        mpz_addmul(c[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const Int& s, const IntPolynomial& a) {
    if (s == 0) return {};
    IntPolynomial r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
  IntPolynomial& operator-=(const IntPolynomial& o) { return *this = *this - o; }
  IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

  IntPolynomial pow(unsigned long k) const {
    IntPolynomial result = constant(1), base = *this;
    while (k) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  // Divide every coefficient by s; s must divide all of them.
  IntPolynomial divexact(const Int& s) const {
    IntPolynomial r = *this;
    for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
    return r;
  }

  // P(T^a)
  IntPolynomial compose_power(unsigned long a) const {
    require(a >= 1, "compose_power needs a >= 1");
    if (is_zero()) return {};
    std::vector<Int> c(degree() * a + 1);
    for (size_t k = 0; k < c_.size(); ++k) c[k * a] = c_[k];
    return IntPolynomial(std::move(c));
  }

  // P(-T)
  IntPolynomial reflect() const {
    IntPolynomial r = *this;
    for (size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
    return r;
  }

  // T^deg P(1/T)
  IntPolynomial reversed() const {
    std::vector<Int> c(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(c));
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Int> c(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return IntPolynomial(std::move(c));
  }

  // Divided derivative P^[j] = P^(j) / j!; coefficient k is C(k+j, j) c_{k+j}.
  IntPolynomial divided_derivative(size_t j) const {
    if (j >= c_.size()) return {};
    std::vector<Int> c(c_.size() - j);
    for (size_t k = 0; k < c.size(); ++k) c[k] = binomial(k + j, j) * c_[k + j];
    return IntPolynomial(std::move(c));
  }

  // Multiplicity of T as a factor.
  size_t zero_order() const {
    size_t r = 0;
    while (r < c_.size() && c_[r] == 0) ++r;
    return r;
  }
  IntPolynomial shift_down(size_t r) const {
    require(r <= zero_order(), "shift_down past a nonzero coefficient");
    return IntPolynomial(std::vector<Int>(c_.begin() + static_cast<long>(r), c_.end()));
  }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }
  Int eval(const Int& x) const {
    Int acc = 0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Int content() const {
    Int g = 0;
    for (auto& v : c_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }
  // Primitive part with positive leading coefficient.
  IntPolynomial primitive_part() const {
    if (is_zero()) return {};
    Int g = content();
    if (c_.back() < 0) g = -g;
    return divexact(g);
  }
  IntPolynomial normalized_sign() const { return !is_zero() && c_.back() < 0 ? -*this : *this; }

  Int sup_norm() const {
    Int m = 0;
    for (auto& v : c_)
      if (mpz_cmpabs(v.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(v);
    return m;
  }
  Int length() const {
    Int s = 0;
    for (auto& v : c_) s += abs(v);
    return s;
  }
  Int norm2_squared() const {
    Int s = 0;
    for (auto& v : c_) s += v * v;
    return s;
  }
  Rat height() const {
    require(!is_zero(), "undefined measure");
    Rat h(sup_norm(), content());
    h.canonicalize();
    return h;
  }

  // Text form "c0 c1 ... cd"; zero is "0".
  std::string to_text() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (k) s += ' ';
      s += c_[k].get_str(10);
    }
    return s;
  }
  static IntPolynomial from_text(const std::string& s) {
    std::istringstream in(s);
    std::vector<Int> c;
    std::string tok;
    while (in >> tok) c.push_back(parse_int(tok));
    if (c.empty()) fail(ErrorKind::Config, "empty polynomial text");
    return IntPolynomial(std::move(c));
  }

  // Human-readable, high to low, e.g. "2*T^2 - 3*T + 1".
  std::string pretty() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t k = c_.size(); k-- > 0;) {
      const Int& v = c_[k];
      if (v == 0) continue;
      Int a = abs(v);
      if (s.empty())
        s += v < 0 ? "-" : "";
      else
        s += v < 0 ? " - " : " + ";
      bool unit = (a == 1 && k > 0);
      if (!unit) s += a.get_str(10);
      if (k > 0) {
        if (!unit) s += "*";
        s += "T";
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

  friend bool operator<(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t k = a.c_.size(); k-- > 0;)
      if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
    return false;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

// Exact division in Z[T]: returns q with a = q*b, or nullopt if b does not divide a.
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  require(!b.is_zero(), "division by zero polynomial");
  if (a.is_zero()) return IntPolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Int> r = a.coeffs();
  const auto& bc = b.coeffs();
  const Int& lb = bc.back();
  size_t db = bc.size() - 1;
  std::vector<Int> q(r.size() - db);
  Int t;
  for (size_t k = q.size(); k-- > 0;) {
    Int& top = r[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (size_t i = 0; i <= db; ++i)
      mpz_submul(r[k + i].get_mpz_t(), q[k].get_mpz_t(), bc[i].get_mpz_t());
  }
  for (size_t k = 0; k < db; ++k)
    if (r[k] != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

inline bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  return divide_exact(a, b).has_value();
}

// Division by a monic polynomial: a = q*b + r with deg r < deg b.
inline std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& a, const IntPolynomial& b) {
  require(!b.is_zero() && b.leading() == 1, "divmod_monic needs a monic divisor");
  if (a.degree() < b.degree()) return {IntPolynomial{}, a};
  std::vector<Int> r = a.coeffs();
  const auto& bc = b.coeffs();
  size_t db = bc.size() - 1;
  std::vector<Int> q(r.size() - db);
  for (size_t k = q.size(); k-- > 0;) {
    q[k] = r[k + db];
    if (q[k] == 0) continue;
    for (size_t i = 0; i <= db; ++i)
      mpz_submul(r[k + i].get_mpz_t(), q[k].get_mpz_t(), bc[i].get_mpz_t());
  }
  r.resize(db);
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

// The n-th cyclotomic polynomial as prod_{e | n} (T^e - 1)^mu(n/e).
inline IntPolynomial cyclotomic_polynomial(unsigned long n) {
  require(n >= 1, "cyclotomic polynomial needs n >= 1");
  IntPolynomial num = IntPolynomial::constant(1), den = IntPolynomial::constant(1);
  for (const Int& e : divisors(Int(n))) {
    int mu = mobius(Int(n) / e);
    IntPolynomial f = IntPolynomial::monomial(1, e.get_ui()) - IntPolynomial::constant(1);
    if (mu == 1) num *= f;
    if (mu == -1) den *= f;
  }
  auto q = divide_exact(num, den);
  require(q.has_value(), "cyclotomic quotient not exact");
  return *q;
}

} // namespace smallval::polyz
