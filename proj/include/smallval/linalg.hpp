#pragma once

// Exact linear algebra over the rationals for small integer matrices.

#include <functional>
#include <vector>

#include "smallval/arith.hpp"

namespace smallval::linalg {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using RatMat = std::vector<std::vector<Rat>>;

inline Int dot(const IntVec& a, const IntVec& b) {
  require(a.size() == b.size(), "dot product length mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int max_norm(const IntVec& v) {
  Int m = 0;
  for (auto& x : v) m = std::max<Int>(m, abs(x));
  return m;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> rref(RatMat& a, size_t cols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (size_t k = 0; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline RatMat to_rational(const IntMat& m) {
  RatMat out;
  for (auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

inline size_t rank(const IntMat& rows, size_t cols) {
  if (rows.empty()) return 0;
  RatMat a = to_rational(rows);
  return rref(a, cols).size();
}

// A primitive integer normal vector of a hyperplane of Q^cols containing
// every row. Requires rank < cols. Deterministic: the free variable of
// smallest index is set.
inline IntVec kernel_vector(const IntMat& rows, size_t cols) {
  RatMat a = to_rational(rows);
  std::vector<size_t> piv = rows.empty() ? std::vector<size_t>{} : rref(a, cols);
  require(piv.size() < cols, "rows span the whole space");
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : piv) is_pivot[c] = true;
  size_t free = 0;
  while (is_pivot[free]) ++free;
  std::vector<Rat> v(cols, Rat(0));
  v[free] = 1;
  for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
  Int den = 1;
  for (auto& x : v) den = lcm(den, Int(x.get_den()));
  IntVec out(cols);
  Int g = 0;
  for (size_t i = 0; i < cols; ++i) {
    Rat s = v[i] * den;
    out[i] = s.get_num();
    g = gcd(g, out[i]);
  }
  for (auto& x : out) x /= g;
  for (auto& x : out) {
    if (x != 0) {
      if (x < 0)
        for (auto& y : out) y = -y;
      break;
    }
  }
  return out;
}

// Determinant by fraction-free Bareiss elimination.
inline Int determinant(IntMat a) {
  size_t n = a.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Adjugate B with B * M = det(M) * I. M must be nonsingular.
inline IntMat adjugate(const IntMat& m) {
  size_t n = m.size();
  Int det = determinant(m);
  require(det != 0, "singular matrix has no inverse");
  RatMat a = to_rational(m);
  for (size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n, Rat(0));
    a[i][n + i] = 1;
  }
  rref(a, n);
  IntMat out(n, IntVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat v = a[i][n + j] * det;
      require(v.get_den() == 1, "adjugate entry not integral");
      out[i][j] = v.get_num();
    }
  return out;
}

// Calls fn on every integer point of [-N, N]^m in lexicographic order.
inline void for_each_grid_point(size_t m, long N, const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> i(m, -N);
  while (true) {
    fn(i);
    size_t k = m;
    while (k > 0) {
      --k;
      if (i[k] < N) {
        ++i[k];
        break;
      }
      i[k] = -N;
      if (k == 0) return;
    }
    if (m == 0) return;
  }
}

inline IntVec to_int_vec(const std::vector<long>& v) { return IntVec(v.begin(), v.end()); }

// LLL reduction of linearly independent integer rows with parameter 99/100,
// using integral Gram-Schmidt data (d_i and lambda_ij stay integers).
inline IntMat lll_reduce(IntMat b) {
  const size_t n = b.size();
  if (n <= 1) return b;
  std::vector<Int> d(n + 1);
  std::vector<IntVec> lam(n, IntVec(n));
  auto B = [&](size_t i) -> IntVec& { return b[i - 1]; };
  auto L = [&](size_t i, size_t j) -> Int& { return lam[i - 1][j - 1]; };
  auto red = [&](size_t k, size_t l) {
    Int twice = 2 * L(k, l);
    if (abs(twice) <= d[l]) return;
    Int q;
    // nearest integer to lambda / d_l
    mpz_fdiv_q(q.get_mpz_t(), Int(twice + d[l]).get_mpz_t(), Int(2 * d[l]).get_mpz_t());
    for (size_t c = 0; c < B(k).size(); ++c) B(k)[c] -= q * B(l)[c];
    L(k, l) -= q * d[l];
    for (size_t i = 1; i < l; ++i) L(k, i) -= q * L(l, i);
  };
  size_t kmax = 1;
  d[0] = 1;
  d[1] = dot(B(1), B(1));
  require(d[1] != 0, "lll_reduce: dependent rows");
  size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (size_t j = 1; j <= k; ++j) {
        Int u = dot(B(k), B(j));
        for (size_t i = 1; i < j; ++i) u = (d[i] * u - L(k, i) * L(j, i)) / d[i - 1];
        if (j < k)
          L(k, j) = u;
        else {
          require(u != 0, "lll_reduce: dependent rows");
          d[k] = u;
        }
      }
    }
    red(k, k - 1);
    Int lk = L(k, k - 1);
    if (100 * d[k] * d[k - 2] < 99 * d[k - 1] * d[k - 1] - 100 * lk * lk) {
      std::swap(B(k), B(k - 1));
      for (size_t j = 1; j + 1 < k; ++j) std::swap(L(k, j), L(k - 1, j));
      Int bb = (d[k - 2] * d[k] + lk * lk) / d[k - 1];
      for (size_t i = k + 1; i <= kmax; ++i) {
        Int t = L(i, k);
        L(i, k) = (d[k] * L(i, k - 1) - lk * t) / d[k - 1];
        L(i, k - 1) = (bb * t + lk * L(i, k)) / d[k];
      }
      d[k - 1] = bb;
      if (k > 2) --k;
    } else {
      for (size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
  return b;
}

} // namespace smallval::linalg
