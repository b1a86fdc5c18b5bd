#pragma once

// Irreducibility over Z by Kronecker's interpolation method: slow, but
// independent of modular factorization.

#include <algorithm>
#include <optional>
#include <vector>

#include "smallval/polynomial.hpp"

namespace smallval::polyz {

namespace detail {

inline unsigned long divisor_count(const Int& n) {
  unsigned long count = 1;
  for (auto& [p, e] : factor_integer(n)) count *= e + 1;
  return count;
}

// Lagrange interpolation through (xs[i], ys[i]); returns nullopt unless integral.
inline std::optional<IntPolynomial> interpolate_integral(const std::vector<Int>& xs, const std::vector<Int>& ys) {
  size_t n = xs.size();
  std::vector<Rat> acc(n, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rat> basis{Rat(1)};
    Rat denom = 1;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      for (size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = next;
      denom *= Rat(xs[i] - xs[j]);
    }
    for (size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * ys[i] / denom;
  }
  std::vector<Int> out;
  for (auto& c : acc) {
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return IntPolynomial(out);
}

} // namespace detail

// Kronecker's method: true iff f (primitive, degree >= 1) has no factor of degree
// 1..deg/2 in Z[T].  Exhaustive over divisor tuples at well-chosen nodes.
inline bool irreducible_by_interpolation(const IntPolynomial& f) {
  long n = f.degree();
  if (n <= 1) return true;
  std::vector<std::pair<unsigned long, long>> nodes;
  for (long x = -40; x <= 40; ++x) {
    Int v = f.eval(Int(x));
    if (v == 0) return false; // rational root
    nodes.emplace_back(detail::divisor_count(v), x);
  }
  std::sort(nodes.begin(), nodes.end());
  for (long d = 1; d <= n / 2; ++d) {
    std::vector<Int> xs;
    std::vector<std::vector<Int>> cand;
    for (long i = 0; i <= d; ++i) {
      Int x = nodes[static_cast<size_t>(i)].second;
      xs.push_back(x);
      auto ds = divisors(f.eval(x));
      std::vector<Int> both;
      for (auto& v : ds) {
        both.push_back(v);
        if (i > 0) both.push_back(-v); // fix the sign at the first node
      }
      cand.push_back(both);
    }
    std::vector<size_t> idx(xs.size(), 0);
    for (;;) {
      std::vector<Int> ys;
      for (size_t i = 0; i < xs.size(); ++i) ys.push_back(cand[i][idx[i]]);
      if (auto g = detail::interpolate_integral(xs, ys)) {
        if (g->degree() == d && divides(*g, f)) return false;
      }
      size_t k = 0;
      while (k < idx.size() && ++idx[k] == cand[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return true;
}

} // namespace smallval::polyz
