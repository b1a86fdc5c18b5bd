#pragma once

// Polynomials over Z/p for word-size primes p < 2^31, and the modular gcd over Z.

#include <cstdint>
#include <vector>

#include "smallval/polynomial.hpp"

namespace smallval::polyz {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>; // low to high, trimmed

struct Zp {
  u64 p;

  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 pow(u64 b, u64 e) const {
    u64 r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    require(a % p != 0, "inverse of zero mod p");
    return pow(a, p - 2);
  }
  u64 of(const Int& v) const { return mpz_fdiv_ui(v.get_mpz_t(), p); }

  static void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  static long deg(const ModPoly& f) { return static_cast<long>(f.size()) - 1; }

  ModPoly reduce(const IntPolynomial& f) const {
    ModPoly r(f.coeffs().size());
    for (size_t k = 0; k < r.size(); ++k) r[k] = of(f.coeffs()[k]);
    trim(r);
    return r;
  }

  ModPoly add(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] = add(r[k], b[k]);
    trim(r);
    return r;
  }
  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] = sub(r[k], b[k]);
    trim(r);
    return r;
  }
  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    // accumulate in 128 bits and reduce once per output coefficient
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
    }
    ModPoly r(acc.size());
    for (size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k] % p);
    trim(r);
    return r;
  }
  ModPoly scale(const ModPoly& a, u64 s) const {
    ModPoly r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = mul(a[k], s);
    trim(r);
    return r;
  }
  ModPoly monic(const ModPoly& a) const {
    if (a.empty()) return a;
    return scale(a, inv(a.back()));
  }

  // a = q*b + r
  void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) const {
    require(!b.empty(), "division by zero polynomial mod p");
    r = a;
    if (a.size() < b.size()) {
      q.clear();
      return;
    }
    q.assign(a.size() - b.size() + 1, 0);
    u64 linv = inv(b.back());
    size_t db = b.size() - 1;
    for (size_t k = q.size(); k-- > 0;) {
      u64 c = mul(r[k + db], linv);
      q[k] = c;
      if (!c) continue;
      u64 nc = p - c;
      for (size_t i = 0; i <= db; ++i) r[k + i] = (r[k + i] + nc * b[i]) % p;
    }
    r.resize(db);
    trim(r);
  }
  ModPoly rem(const ModPoly& a, const ModPoly& b) const {
    if (a.size() < b.size()) return a;
    ModPoly r = a;
    u64 linv = inv(b.back());
    size_t db = b.size() - 1;
    for (size_t k = a.size() - b.size() + 1; k-- > 0;) {
      u64 c = mul(r[k + db], linv);
      if (!c) continue;
      u64 nc = p - c;
      for (size_t i = 0; i <= db; ++i) r[k + i] = (r[k + i] + nc * b[i]) % p;
    }
    r.resize(db);
    trim(r);
    return r;
  }
  ModPoly quo(const ModPoly& a, const ModPoly& b) const {
    ModPoly q, r;
    divmod(a, b, q, r);
    return q;
  }

  // Monic gcd; gcd(0, 0) = 0.
  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a.swap(b);
      b.swap(r);
    }
    return monic(a);
  }

  // Returns monic g = s*a + t*b.
  ModPoly ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) const {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      ModPoly q, r;
      divmod(r0, r1, q, r);
      ModPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      r0.swap(r1);
      r1.swap(r);
      s0.swap(s1);
      s1.swap(s2);
      t0.swap(t1);
      t1.swap(t2);
    }
    if (r0.empty()) {
      s = s0;
      t = t0;
      return r0;
    }
    u64 li = inv(r0.back());
    s = scale(s0, li);
    t = scale(t0, li);
    return scale(r0, li);
  }

  ModPoly derivative(const ModPoly& a) const {
    if (a.size() <= 1) return {};
    ModPoly r(a.size() - 1);
    for (size_t k = 1; k < a.size(); ++k) r[k - 1] = mul(a[k], k % p);
    trim(r);
    return r;
  }

  // base^e mod m
  ModPoly powmod(ModPoly base, const Int& e, const ModPoly& m) const {
    ModPoly r{1};
    r = rem(r, m);
    base = rem(base, m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
      r = rem(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
    }
    return r;
  }
};

// Primes just below 2^31, descending, used by the modular gcd.
inline const std::vector<u64>& gcd_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    for (u64 c = (u64(1) << 31) - 1; out.size() < 600; c -= 2)
      if (is_prime(c)) out.push_back(c);
    return out;
  }();
  return primes;
}

namespace detail {

inline IntPolynomial symmetric_lift(const std::vector<Int>& h, const Int& m) {
  Int half = m / 2;
  std::vector<Int> c(h.size());
  for (size_t k = 0; k < h.size(); ++k) c[k] = h[k] > half ? Int(h[k] - m) : h[k];
  return IntPolynomial(std::move(c));
}

} // namespace detail

// gcd of two primitive polynomials with positive leading coefficients.
inline IntPolynomial gcd_primitive(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  if (a.degree() == 0 || b.degree() == 0) return IntPolynomial::constant(1);
  if (a == b) return a;
  Int g = gcd(a.leading(), b.leading());
  Int lcprod = a.leading() * b.leading();
  std::vector<Int> h;
  Int modulus = 0;
  long e = -1;
  IntPolynomial previous;
  bool have_previous = false;
  for (u64 p : gcd_primes()) {
    if (mpz_divisible_ui_p(lcprod.get_mpz_t(), p)) continue;
    Zp F{p};
    ModPoly gp = F.gcd(F.reduce(a), F.reduce(b));
    if (Zp::deg(gp) == 0) return IntPolynomial::constant(1);
    gp = F.scale(gp, F.of(g));
    long dg = Zp::deg(gp);
    if (e >= 0 && dg > e) continue;
    if (e < 0 || dg < e) {
      e = dg;
      h.assign(gp.size(), 0);
      for (size_t k = 0; k < gp.size(); ++k) h[k] = static_cast<unsigned long>(gp[k]);
      modulus = static_cast<unsigned long>(p);
      have_previous = false;
    } else {
      u64 minv = F.inv(F.of(modulus));
      for (size_t k = 0; k < h.size(); ++k) {
        u64 hk = F.of(h[k]);
        u64 t = F.mul(F.sub(gp[k], hk), minv);
        h[k] += modulus * static_cast<unsigned long>(t);
      }
      modulus *= static_cast<unsigned long>(p);
    }
    IntPolynomial cand = detail::symmetric_lift(h, modulus).primitive_part();
    if (have_previous && cand == previous) {
      if (divides(cand, a) && divides(cand, b)) return cand;
    }
    previous = cand;
    have_previous = true;
  }
  fail(ErrorKind::Internal, "modular gcd ran out of primes");
}

// gcd in Z[T] of a list, positive leading coefficient, content = gcd of contents.
inline IntPolynomial gcd_set(const std::vector<IntPolynomial>& ps) {
  std::vector<IntPolynomial> prims;
  Int content = 0;
  for (auto& p : ps) {
    if (p.is_zero()) continue;
    content = gcd(content, p.content());
    prims.push_back(p.primitive_part());
  }
  if (prims.empty()) fail(ErrorKind::Precondition, "gcd of all-zero input");
  std::stable_sort(prims.begin(), prims.end(),
                   [](const IntPolynomial& x, const IntPolynomial& y) { return x.degree() < y.degree(); });
  IntPolynomial g = prims.front();
  for (size_t i = 1; i < prims.size() && g.degree() > 0; ++i) g = gcd_primitive(g, prims[i]);
  return content * g;
}

inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) { return gcd_set({a, b}); }

} // namespace smallval::polyz
