#pragma once

// Slow, independent reference computations used only to cross-check the library.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "smallval/kronecker.hpp"
#include "smallval/polyz.hpp"

namespace oracle {

using smallval::Int;
using smallval::Rat;
using smallval::polyz::IntPolynomial;

using RatPoly = std::vector<Rat>;

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rat(const IntPolynomial& p) {
  RatPoly r;
  for (auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

inline RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// Primitive part (positive leading coefficient) of the monic Euclidean gcd over Q.
inline IntPolynomial euclid_gcd_primitive(const IntPolynomial& x, const IntPolynomial& y) {
  RatPoly a = to_rat(x), b = to_rat(y);
  while (!b.empty()) {
    RatPoly r = rat_rem(a, b);
    a = b;
    b = r;
  }
  Int den = 1;
  for (auto& c : a) den = smallval::lcm(den, c.get_den());
  std::vector<Int> out;
  for (auto& c : a) {
    Rat v = c * den;
    out.push_back(v.get_num());
  }
  return IntPolynomial(out).primitive_part();
}

// Kronecker's method, shared with the campaign runner.
inline bool kronecker_irreducible(const IntPolynomial& f) { return smallval::polyz::irreducible_by_interpolation(f); }

inline IntPolynomial random_poly(smallval::Rng& rng, long deg, long bound) {
  std::vector<Int> c;
  for (long k = 0; k <= deg; ++k) c.emplace_back(smallval::random_long(rng, -bound, bound));
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(c);
}

// Phi_n as (T^n - 1) divided by Phi_e for every proper divisor e, recursively.
inline IntPolynomial cyclotomic_by_division(unsigned long n) {
  static std::map<unsigned long, IntPolynomial> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  IntPolynomial f = IntPolynomial::monomial(1, n) - IntPolynomial::constant(1);
  for (unsigned long e = 1; e < n; ++e)
    if (n % e == 0) f = *smallval::polyz::divide_exact(f, cyclotomic_by_division(e));
  memo.emplace(n, f);
  return f;
}

// y in C_k(x) by trying every pair of k-tuples of primes from A.
template <class Ctx>
bool reach_by_tuples(const Ctx& ctx, const std::vector<Int>& A, const typename Ctx::Element& x, const typename Ctx::Element& y,
                     unsigned k) {
  std::vector<Int> products = {Int(1)};
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Int> next;
    for (auto& p : products)
      for (auto& q : A) next.push_back(p * q);
    products = std::move(next);
  }
  for (auto& P : products)
    for (auto& Q : products)
      if (ctx.equal(ctx.pow(x, P), ctx.pow(y, Q))) return true;
  return false;
}

// Least n in [1, nmax] and m in [-mmax, mmax] with y^n = x^m, by search.
inline std::optional<std::pair<Int, Int>> relation_by_search(const Rat& x, const Rat& y, long nmax, long mmax) {
  for (long n = 1; n <= nmax; ++n) {
    Rat yn = smallval::rpow(y, n);
    for (long m = -mmax; m <= mmax; ++m)
      if (smallval::rpow(x, m) == yn) return std::make_pair(Int(m), Int(n));
  }
  return std::nullopt;
}

// Taylor coefficients of f(xi + T) at a rational point, by expanding powers.
inline RatPoly taylor_at(const IntPolynomial& f, const Rat& xi) {
  RatPoly out(f.coeffs().size(), Rat(0)), pw = {Rat(1)};
  for (size_t i = 0; i < f.coeffs().size(); ++i) {
    for (size_t k = 0; k < pw.size(); ++k) out[k] += Rat(f.coeffs()[i]) * pw[k];
    RatPoly next(pw.size() + 1, Rat(0));
    for (size_t k = 0; k < pw.size(); ++k) {
      next[k] += pw[k] * xi;
      next[k + 1] += pw[k];
    }
    pw = std::move(next);
  }
  return out;
}

// First J+1 coefficients of the power series f(xi + T)^(-t).
inline RatPoly inverse_power_series(const IntPolynomial& f, unsigned long t, const Rat& xi, size_t J) {
  RatPoly c = taylor_at(f, xi);
  c.resize(J + 1, Rat(0));
  RatPoly inv(J + 1, Rat(0));
  inv[0] = 1 / c[0];
  for (size_t k = 1; k <= J; ++k) {
    Rat s = 0;
    for (size_t i = 1; i <= k; ++i) s += c[i] * inv[k - i];
    inv[k] = -s / c[0];
  }
  RatPoly out(J + 1, Rat(0));
  out[0] = 1;
  for (unsigned long r = 0; r < t; ++r) {
    RatPoly next(J + 1, Rat(0));
    for (size_t i = 0; i <= J; ++i)
      for (size_t k = 0; i + k <= J; ++k) next[i + k] += out[i] * inv[k];
    out = std::move(next);
  }
  return out;
}

} // namespace oracle
