#pragma once

// Integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "smallval/error.hpp"

namespace smallval {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& x) { return x.get_str(10); }
inline std::string to_string(const Rat& x) { return x.get_str(10); }

inline Int parse_int(const std::string& s) {
  Int out;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || out.set_str(t, 10) != 0)
    fail(ErrorKind::Config, "malformed integer '" + s + "'");
  return out;
}

// Accepts "a", "a/b", "1.25", "-3e-7", "2.5E3".
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) fail(ErrorKind::Config, "empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) fail(ErrorKind::Config, "zero denominator in '" + s + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  std::string mant = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    try {
      exp10 = std::stol(s.substr(epos + 1));
    } catch (...) {
      fail(ErrorKind::Config, "malformed exponent in '" + s + "'");
    }
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  Rat q(parse_int(mant));
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    q *= p10;
  else
    q /= p10;
  q.canonicalize();
  return q;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rat rpow(const Rat& b, long e) {
  Int num = ipow(b.get_num(), static_cast<unsigned long>(e < 0 ? -e : e));
  Int den = ipow(b.get_den(), static_cast<unsigned long>(e < 0 ? -e : e));
  Rat r = e >= 0 ? Rat(num, den) : Rat(den, num);
  r.canonicalize();
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Int floor_of(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_of(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Nearest integer, halves rounded toward +infinity.
inline Int round_of(const Rat& q) { return floor_of(q + Rat(1, 2)); }

// floor(x^(1/k)) for x >= 0, together with an exactness flag.
inline Int floor_root(const Int& x, unsigned long k, bool* exact = nullptr) {
  require(x >= 0 && k >= 1, "floor_root needs x >= 0, k >= 1");
  Int r;
  int e = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  if (exact) *exact = e != 0;
  return r;
}

// floor(n^q) for integer n >= 1 and rational q.
inline Int floor_pow(const Int& n, const Rat& q, bool* exact = nullptr) {
  require(n >= 1, "floor_pow needs n >= 1");
  if (n == 1 || q == 0) {
    if (exact) *exact = true;
    return 1;
  }
  if (q < 0) {
    if (exact) *exact = false;
    return 0;
  }
  Int a = q.get_num();
  Int b = q.get_den();
  require(a.fits_ulong_p() && b.fits_ulong_p(), "exponent too large");
  return floor_root(ipow(n, a.get_ui()), b.get_ui(), exact);
}

// Least integer c with c >= n^q.
inline Int ceil_pow(const Int& n, const Rat& q) {
  bool exact = false;
  Int f = floor_pow(n, q, &exact);
  return exact ? f : Int(f + 1);
}

// Primes up to n inclusive, by sieve.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline bool is_prime(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

namespace detail {

inline Int pollard_rho(const Int& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Int c = seed, y = 2, x, g = 1, q = 1, ys;
  unsigned long r = 1, m = 128;
  auto f = [&](const Int& v) {
    Int w = v * v + c;
    mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
    return w;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Int d = x - y;
        q = q * abs(d);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(Int(abs(Int(x - ys))), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    Int d = pollard_rho(n, seed);
    if (d != n) {
      factor_into(d, out);
      factor_into(Int(n / d), out);
      return;
    }
  }
}

} // namespace detail

// Prime factorization of |n| for n != 0, primes ascending.
inline std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n) {
  require(n != 0, "factor_integer: zero");
  Int m = abs(n);
  std::map<Int, unsigned> acc;
  static const std::vector<std::uint64_t> small = primes_up_to(10000);
  for (std::uint64_t p : small) {
    if (m == 1) break;
    if (Int(static_cast<unsigned long>(p * p)) > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++acc[Int(static_cast<unsigned long>(p))];
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  detail::factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

inline std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

// All positive divisors of n, ascending.
inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out{1};
  for (auto& [p, e] : factor_integer(n)) {
    size_t base = out.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Int euler_phi(const Int& n) {
  Int r = n;
  for (auto& [p, e] : factor_integer(n)) r = r / p * (p - 1);
  return r;
}

inline unsigned omega(const Int& n) { return static_cast<unsigned>(factor_integer(n).size()); }

inline int mobius(const Int& n) {
  auto f = factor_integer(n);
  for (auto& [p, e] : f)
    if (e > 1) return 0;
  return f.size() % 2 ? -1 : 1;
}

// Tables of phi and omega for 1..n computed by a linear sieve.
struct ArithmeticTables {
  std::vector<std::uint32_t> phi;
  std::vector<std::uint8_t> omega;

  explicit ArithmeticTables(std::uint32_t n) : phi(n + 1), omega(n + 1, 0) {
    std::vector<std::uint32_t> primes;
    std::vector<std::uint32_t> spf(n + 1, 0);
    if (n >= 1) phi[1] = 1;
    for (std::uint32_t i = 2; i <= n; ++i) {
      if (spf[i] == 0) {
        spf[i] = i;
        primes.push_back(i);
        phi[i] = i - 1;
        omega[i] = 1;
      }
      for (std::uint32_t p : primes) {
        std::uint64_t ip = std::uint64_t(i) * p;
        if (p > spf[i] || ip > n) break;
        spf[ip] = p;
        if (p == spf[i]) {
          phi[ip] = phi[i] * p;
          omega[ip] = omega[i];
        } else {
          phi[ip] = phi[i] * (p - 1);
          omega[ip] = omega[i] + 1;
        }
      }
    }
  }
};

// Deterministic RNG used by every randomized generator.
using Rng = std::mt19937_64;

inline Int random_int(Rng& rng, const Int& lo, const Int& hi) {
  require(lo <= hi, "random_int: empty range");
  Int span = hi - lo + 1;
  // draw 64-bit limbs until the span is covered, then reduce
  Int acc = 0;
  size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2) + 64;
  for (size_t b = 0; b < bits; b += 64) {
    acc <<= 64;
    acc += Int(std::to_string(rng()));
  }
  mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), span.get_mpz_t());
  return lo + acc;
}

inline long random_long(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

} // namespace smallval
