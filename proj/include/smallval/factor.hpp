#pragma once

// Factorization in Z[T]: squarefree split, factoring modulo a small prime,
// multifactor Hensel lifting and Zassenhaus recombination.

#include <algorithm>
#include <bitset>
#include <numeric>

#include "smallval/modular.hpp"

namespace smallval::polyz {

struct Factorization {
  int unit_sign = 1;
  Int content = 1;
  std::vector<std::pair<IntPolynomial, unsigned>> factors;

  IntPolynomial expand() const {
    IntPolynomial r = IntPolynomial::constant(content * unit_sign);
    for (auto& [f, e] : factors) r *= f.pow(e);
    return r;
  }
};

namespace detail {

// Squarefree decomposition of a primitive polynomial with positive leading coefficient:
// f = prod s_i^i with s_i squarefree, pairwise coprime, primitive.
inline std::vector<std::pair<IntPolynomial, unsigned>> squarefree_parts(const IntPolynomial& f) {
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  if (f.degree() <= 0) return out;
  IntPolynomial fp = f.derivative();
  IntPolynomial a0 = gcd_primitive(f, fp.primitive_part());
  IntPolynomial b = *divide_exact(f, a0);
  IntPolynomial c = *divide_exact(fp, a0);
  IntPolynomial d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    IntPolynomial a = d.is_zero() ? b : gcd_primitive(b, d.primitive_part());
    if (a.degree() > 0) out.emplace_back(a, i);
    b = *divide_exact(b, a);
    c = *divide_exact(d, a);
    d = c - b.derivative();
  }
  return out;
}

inline std::vector<ModPoly> equal_degree_split(const Zp& F, const ModPoly& g, long d, Rng& rng) {
  if (Zp::deg(g) == d) return {g};
  Int e = (ipow(Int(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    ModPoly a(static_cast<size_t>(Zp::deg(g)));
    for (auto& v : a) v = rng() % F.p;
    Zp::trim(a);
    if (Zp::deg(a) < 1) continue;
    ModPoly b = F.sub(F.powmod(a, e, g), ModPoly{1});
    ModPoly c = F.gcd(b, g);
    if (Zp::deg(c) > 0 && Zp::deg(c) < Zp::deg(g)) {
      auto left = equal_degree_split(F, c, d, rng);
      auto right = equal_degree_split(F, F.monic(F.quo(g, c)), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

// Distinct-degree factorization of a monic squarefree f: pairs (product, degree).
inline std::vector<std::pair<ModPoly, long>> distinct_degree(const Zp& F, ModPoly f) {
  std::vector<std::pair<ModPoly, long>> out;
  ModPoly x{0, 1}, h = x;
  Int p(static_cast<unsigned long>(F.p));
  for (long i = 1; 2 * i <= Zp::deg(f); ++i) {
    h = F.powmod(h, p, f);
    ModPoly g = F.gcd(F.sub(h, x), f);
    if (Zp::deg(g) > 0) {
      out.emplace_back(g, i);
      f = F.monic(F.quo(f, g));
      h = F.rem(h, f);
    }
  }
  if (Zp::deg(f) > 0) out.emplace_back(f, Zp::deg(f));
  return out;
}

inline std::vector<ModPoly> factor_mod_p(const Zp& F, const ModPoly& f, Rng& rng) {
  std::vector<ModPoly> out;
  for (auto& [g, d] : distinct_degree(F, F.monic(f))) {
    auto parts = equal_degree_split(F, g, d, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

// Reduce coefficients into [0, m).
inline IntPolynomial mod_reduce(const IntPolynomial& f, const Int& m) {
  std::vector<Int> c = f.coeffs();
  for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return IntPolynomial(std::move(c));
}

inline IntPolynomial mod_symmetric(const IntPolynomial& f, const Int& m) {
  Int half = m / 2;
  std::vector<Int> c = f.coeffs();
  for (auto& v : c) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > half) v -= m;
  }
  return IntPolynomial(std::move(c));
}

inline IntPolynomial lift_modpoly(const ModPoly& f) {
  std::vector<Int> c(f.size());
  for (size_t k = 0; k < f.size(); ++k) c[k] = static_cast<unsigned long>(f[k]);
  return IntPolynomial(std::move(c));
}

// divmod by a polynomial that is monic modulo m
inline std::pair<IntPolynomial, IntPolynomial> divmod_mod(const IntPolynomial& a, const IntPolynomial& b,
                                                          const Int& m) {
  auto [q, r] = divmod_monic(mod_reduce(a, m), mod_reduce(b, m));
  return {mod_reduce(q, m), mod_reduce(r, m)};
}

// One quadratic Hensel step: from f = g h mod m and s g + t h = 1 mod m (h monic)
// to the same relations modulo mm (m | mm | m^2).
inline void hensel_step(const IntPolynomial& f, IntPolynomial& g, IntPolynomial& h, IntPolynomial& s,
                        IntPolynomial& t, const Int& mm) {
  IntPolynomial e = mod_reduce(f - g * h, mm);
  auto [q, r] = divmod_mod(s * e, h, mm);
  IntPolynomial g2 = mod_reduce(g + t * e + q * g, mm);
  IntPolynomial h2 = mod_reduce(h + r, mm);
  IntPolynomial b = mod_reduce(s * g2 + t * h2 - IntPolynomial::constant(1), mm);
  auto [c, d] = divmod_mod(s * b, h2, mm);
  s = mod_reduce(s - d, mm);
  t = mod_reduce(t - t * b - c * g2, mm);
  g = g2;
  h = h2;
}

// Lift monic factors (mod p) of f, with f = lc(f) * prod factors mod p, to modulus p^k.
inline std::vector<IntPolynomial> multifactor_lift(const IntPolynomial& f, const std::vector<ModPoly>& factors,
                                                   u64 p, const Int& pk) {
  Zp F{p};
  if (factors.size() == 1) {
    Int inv;
    Int lc = f.leading();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
    return {mod_reduce(inv * f, pk)};
  }
  size_t half = factors.size() / 2;
  ModPoly G{1}, H{1};
  for (size_t i = 0; i < half; ++i) G = F.mul(G, factors[i]);
  for (size_t i = half; i < factors.size(); ++i) H = F.mul(H, factors[i]);
  ModPoly gm = F.scale(G, F.of(f.leading()));
  ModPoly sm, tm;
  F.ext_gcd(gm, H, sm, tm);
  IntPolynomial g = lift_modpoly(gm), h = lift_modpoly(H), s = lift_modpoly(sm), t = lift_modpoly(tm);
  Int m = static_cast<unsigned long>(p);
  while (m < pk) {
    Int mm = m * m;
    if (mm > pk) mm = pk;
    hensel_step(f, g, h, s, t, mm);
    m = mm;
  }
  auto left = multifactor_lift(g, std::vector<ModPoly>(factors.begin(), factors.begin() + static_cast<long>(half)), p, pk);
  auto right = multifactor_lift(h, std::vector<ModPoly>(factors.begin() + static_cast<long>(half), factors.end()), p, pk);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

// Degrees d for which a factor of degree d is consistent with the modular factor degrees.
inline std::vector<bool> subset_degrees(const std::vector<long>& degs, long n) {
  std::vector<bool> ok(static_cast<size_t>(n + 1), false);
  ok[0] = true;
  for (long d : degs)
    for (long s = n; s >= d; --s)
      if (ok[static_cast<size_t>(s - d)]) ok[static_cast<size_t>(s)] = true;
  return ok;
}

// Irreducible factors of a squarefree primitive f with positive leading coefficient, deg f >= 1.
inline std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& f) {
  long n = f.degree();
  if (n == 1) return {f};
  Rng rng(0x5eedULL + static_cast<u64>(n));
  // Pick the prime with the fewest modular factors among several candidates; the
  // degree patterns of all candidates are intersected as an irreducibility filter.
  std::vector<bool> feasible(static_cast<size_t>(n + 1), true);
  u64 best_p = 0;
  size_t best_count = 0;
  int tried = 0;
  for (u64 p : primes_up_to(20000)) {
    if (p == 2) continue;
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
    Zp F{p};
    ModPoly fp = F.reduce(f);
    if (Zp::deg(F.gcd(fp, F.derivative(fp))) != 0) continue;
    std::vector<long> degs;
    size_t count = 0;
    for (auto& [g, d] : distinct_degree(F, F.monic(fp))) {
      for (long k = 0; k < Zp::deg(g) / d; ++k) degs.push_back(d);
      count += static_cast<size_t>(Zp::deg(g) / d);
    }
    auto ok = subset_degrees(degs, n);
    for (long d = 0; d <= n; ++d) feasible[static_cast<size_t>(d)] = feasible[static_cast<size_t>(d)] && ok[static_cast<size_t>(d)];
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_count = count;
    }
    if (count == 1 || ++tried >= 8) break;
  }
  if (best_p == 0) fail(ErrorKind::Internal, "no suitable prime for factorization");
  bool irreducible = best_count == 1;
  if (!irreducible) {
    irreducible = true;
    for (long d = 1; d < n; ++d)
      if (feasible[static_cast<size_t>(d)]) irreducible = false;
  }
  if (irreducible) return {f};

  Zp F{best_p};
  std::vector<ModPoly> modfactors = factor_mod_p(F, F.reduce(f), rng);
  std::sort(modfactors.begin(), modfactors.end());

  // Mignotte: every factor g of f has ||g||_inf <= 2^n ||f||_2; the lifted candidates
  // carry an extra factor lc(f).
  Int norm2 = floor_root(f.norm2_squared(), 2) + 1;
  Int bound = 2 * abs(f.leading()) * (Int(1) << static_cast<unsigned long>(n)) * norm2;
  Int pk = static_cast<unsigned long>(best_p);
  while (pk <= bound) pk *= static_cast<unsigned long>(best_p);
  std::vector<IntPolynomial> lifted = multifactor_lift(f, modfactors, best_p, pk);

  std::vector<IntPolynomial> out;
  IntPolynomial cur = f;
  size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    Int lc = cur.leading();
    Int c0 = cur.constant_term() * lc;
    for (;;) {
      // constant-term pretest before forming the product
      Int prod_c0 = lc;
      for (size_t i : idx) prod_c0 = prod_c0 * lifted[i].constant_term() % pk;
      mpz_fdiv_r(prod_c0.get_mpz_t(), prod_c0.get_mpz_t(), pk.get_mpz_t());
      if (prod_c0 > pk / 2) prod_c0 -= pk;
      bool pass = prod_c0 != 0 ? (c0 % prod_c0 == 0) : (c0 == 0);
      if (pass) {
        IntPolynomial g = IntPolynomial::constant(lc);
        for (size_t i : idx) g = mod_reduce(g * lifted[i], pk);
        g = mod_symmetric(g, pk).primitive_part();
        if (auto q = divide_exact(cur, g)) {
          out.push_back(g);
          cur = *q;
          std::vector<IntPolynomial> rest;
          for (size_t i = 0; i < lifted.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
          lifted.swap(rest);
          found = true;
          break;
        }
      }
      // next combination
      long pos = static_cast<long>(s) - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == lifted.size() - s + static_cast<size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (size_t j = static_cast<size_t>(pos) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (cur.degree() > 0) out.push_back(cur.primitive_part());
  return out;
}

} // namespace detail

inline Factorization factor_irreducible(const IntPolynomial& p) {
  require(!p.is_zero(), "factorization of zero polynomial");
  Factorization out;
  out.unit_sign = p.leading() < 0 ? -1 : 1;
  out.content = p.content();
  IntPolynomial f = p.primitive_part();
  size_t r = f.zero_order();
  if (r > 0) {
    out.factors.emplace_back(IntPolynomial::x(), static_cast<unsigned>(r));
    f = f.shift_down(r);
  }
  for (auto& [s, mult] : detail::squarefree_parts(f))
    for (auto& g : detail::factor_squarefree(s)) out.factors.emplace_back(g, mult);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// True iff p = +-q^k for one irreducible q of Z[T]; a prime power integer counts.
inline bool is_primary(const IntPolynomial& p) {
  require(!p.is_zero(), "is_primary of zero polynomial");
  if (p.degree() == 0) {
    Int c = abs(p.leading());
    return c > 1 && factor_integer(c).size() == 1;
  }
  if (p.content() != 1) return false;
  return factor_irreducible(p).factors.size() == 1;
}

} // namespace smallval::polyz
