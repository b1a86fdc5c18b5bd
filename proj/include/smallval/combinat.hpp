#pragma once

// Sums of bounded tables with small pairwise overlaps, and exact counts of
// lattice points in a box on a congruence class or coprime to a modulus.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smallval/arith.hpp"
#include "smallval/report.hpp"

namespace smallval::combinat {

// phi: A x B -> [0, kappa1], stored row-major with rows indexed by A.
struct ValueTable {
  std::vector<std::string> row_labels, col_labels;
  std::vector<Rat> values;

  ValueTable() = default;
  ValueTable(size_t rows, size_t cols, Rat fill = Rat(0)) : values(rows * cols, fill) {
    for (size_t i = 0; i < rows; ++i) row_labels.push_back(std::to_string(i));
    for (size_t j = 0; j < cols; ++j) col_labels.push_back(std::to_string(j));
  }
  // Bit (i * cols + j) of mask is entry (i, j).
  static ValueTable from_bits(size_t rows, size_t cols, unsigned long mask) {
    ValueTable t(rows, cols);
    for (size_t k = 0; k < rows * cols; ++k)
      if (mask >> k & 1UL) t.values[k] = 1;
    return t;
  }

  size_t rows() const { return row_labels.size(); }
  size_t cols() const { return col_labels.size(); }
  Rat& at(size_t i, size_t j) { return values[i * cols() + j]; }
  const Rat& at(size_t i, size_t j) const { return values[i * cols() + j]; }

  Rat row_sum(size_t i) const {
    Rat s = 0;
    for (size_t j = 0; j < cols(); ++j) s += at(i, j);
    return s;
  }
  Rat total() const {
    Rat s = 0;
    for (const Rat& v : values) s += v;
    return s;
  }
  Rat min_sum(size_t i1, size_t i2) const {
    Rat s = 0;
    for (size_t j = 0; j < cols(); ++j) s += std::min(at(i1, j), at(i2, j));
    return s;
  }
  // Largest pairwise min-sum, i.e. the smallest admissible kappa2 (0 for one row).
  Rat max_min_sum() const {
    Rat best = 0;
    for (size_t a = 0; a < rows(); ++a)
      for (size_t b = a + 1; b < rows(); ++b) best = std::max(best, min_sum(a, b));
    return best;
  }
  Rat max_entry() const {
    Rat best = 0;
    for (const Rat& v : values) best = std::max(best, v);
    return best;
  }

  nlohmann::json to_json() const {
    nlohmann::json rowsj = nlohmann::json::array();
    for (size_t i = 0; i < rows(); ++i) {
      nlohmann::json r = nlohmann::json::array();
      for (size_t j = 0; j < cols(); ++j) r.push_back(to_string(at(i, j)));
      rowsj.push_back(r);
    }
    return {{"rows", row_labels}, {"cols", col_labels}, {"values", rowsj}};
  }
};

// sum phi <= max{|A| sqrt(2|B| k1 k2), 2|B| k1} when every pair of distinct
// rows has sum_b min(phi(a1,b), phi(a2,b)) <= k2. The intermediate bound
// sum phi <= (|A||B|/i) k1 + ((i-1)|A|/2) k2 for i = 1..|A| is checked too.
inline BoundReport zarankiewicz_sum_bound(const ValueTable& table, const Rat& kappa1, const Rat& kappa2,
                                          const numeric::PrecisionPolicy& policy = {}) {
  if (table.rows() == 0 || table.cols() == 0) fail(ErrorKind::Precondition, "empty table");
  if (table.values.size() != table.rows() * table.cols()) fail(ErrorKind::Precondition, "table shape mismatch");
  if (kappa1 < 0 || kappa2 < 0) fail(ErrorKind::Precondition, "need kappa1, kappa2 >= 0");
  for (size_t i = 0; i < table.rows(); ++i)
    for (size_t j = 0; j < table.cols(); ++j)
      if (table.at(i, j) < 0 || table.at(i, j) > kappa1)
        fail(ErrorKind::Precondition, "entry (" + table.row_labels[i] + ", " + table.col_labels[j] + ") = " +
                                          to_string(table.at(i, j)) + " outside [0, kappa1]");
  for (size_t a = 0; a < table.rows(); ++a)
    for (size_t b = a + 1; b < table.rows(); ++b) {
      Rat s = table.min_sum(a, b);
      if (s > kappa2)
        fail(ErrorKind::Precondition, "rows " + table.row_labels[a] + " and " + table.row_labels[b] +
                                          ": sum of minima " + to_string(s) + " > kappa2 = " + to_string(kappa2));
    }

  const long nA = static_cast<long>(table.rows()), nB = static_cast<long>(table.cols());
  BoundReport rep("combinat.zarankiewicz_sum",
                  {{"rows", nA}, {"cols", nB}, {"kappa1", to_string(kappa1)}, {"kappa2", to_string(kappa2)}});
  Rat total = table.total();

  std::vector<Rat> psi;
  for (size_t i = 0; i < table.rows(); ++i) psi.push_back(table.row_sum(i));
  std::sort(psi.begin(), psi.end(), std::greater<>());
  // Exact, kept out of the displayed comparison: the i heaviest rows, then the averaging step.
  Rat top = 0;
  for (long i = 1; i <= nA; ++i) {
    top += psi[i - 1];
    if (top > Rat(nB) * kappa1 + Rat(binomial(i, 2)) * kappa2)
      rep.fail_with("the " + std::to_string(i) + " heaviest rows exceed |B| kappa1 + C(i,2) kappa2");
    if (total > Rat(nA * nB) / i * kappa1 + Rat((i - 1) * nA) / 2 * kappa2)
      rep.fail_with("intermediate bound fails at i = " + std::to_string(i));
  }
  rep.params["intermediate_checks"] = 2 * nA;

  // Decide the max exactly by squaring, then enclose only the root.
  Rat under = Rat(2 * nB) * kappa1 * kappa2;
  Rat flat = Rat(2 * nB) * kappa1;
  Real rhs = Rat(nA * nA) * under > flat * flat ? Real(Rat(nA)) * sqrt(Real(under)) : Real(flat);
  rep.check(Real(total), rhs, Relation::LE, policy);
  rep.params["sum"] = to_string(total);
  return rep.finish();
}

// Largest number of ones in a rows x cols 0/1 matrix with no 2 x n1 block of ones,
// by exhaustive search (rows * cols <= 20).
inline long max_ones_without_block(size_t rows, size_t cols, long n1) {
  require(rows * cols <= 20, "exhaustive search limited to 20 cells");
  long best = 0;
  for (unsigned long mask = 0; mask < (1UL << (rows * cols)); ++mask) {
    long ones = __builtin_popcountl(mask);
    if (ones <= best) continue;
    bool ok = true;
    for (size_t a = 0; a < rows && ok; ++a)
      for (size_t b = a + 1; b < rows && ok; ++b) {
        unsigned long ra = mask >> (a * cols) & ((1UL << cols) - 1);
        unsigned long rb = mask >> (b * cols) & ((1UL << cols) - 1);
        ok = __builtin_popcountl(ra & rb) < n1;
      }
    if (ok) best = ones;
  }
  return best;
}

struct CongruenceCount {
  long m = 0;
  Int N, modulus;
  std::vector<Int> a;
  std::optional<Int> b;  // set for a single congruence class, unset for the coprimality count
  Int count;
  Rat main_term, error;
  Int error_bound;
  BoundReport report;

  nlohmann::json to_json() const {
    nlohmann::json aj = nlohmann::json::array();
    for (const Int& x : a) aj.push_back(to_string(x));
    nlohmann::json j = {{"m", m},
                        {"N", to_string(N)},
                        {"modulus", to_string(modulus)},
                        {"a", aj},
                        {"count", to_string(count)},
                        {"main_term", to_string(main_term)},
                        {"error", to_string(error)},
                        {"error_bound", to_string(error_bound)},
                        {"report", report.to_json()}};
    if (b) j["b"] = to_string(*b);
    return j;
  }
};

namespace detail {

inline Int mod_floor(const Int& x, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

// Number of i in [1, N] with i = r (mod q), 0 <= r < q.
inline Int progression_count(const Int& N, const Int& r, const Int& q) {
  Int first = r == 0 ? q : r;
  if (first > N) return 0;
  return Int((N - first) / q) + 1;
}

// Solutions of a1*i1 + ... + am*im = b (mod d) with 1 <= i_k <= N: the tail
// (i2..im) is tabulated by residue, then a1*i1 = b - tail is solved for i1.
inline Int congruence_count(const std::vector<Int>& a, const Int& N, const Int& d, const Int& b) {
  std::map<Int, Int> tail = {{Int(0), Int(1)}};
  for (size_t k = 1; k < a.size(); ++k) {
    std::map<Int, Int> next;
    for (const auto& [r, c] : tail)
      for (Int i = 1; i <= N; ++i) next[mod_floor(Int(r + a[k] * i), d)] += c;
    tail.swap(next);
  }
  Int d1 = gcd(mod_floor(a[0], d), d);
  Int dp = d / d1;
  Int ap = mod_floor(a[0], d) / d1;
  Int inv = 0;
  if (dp > 1) mpz_invert(inv.get_mpz_t(), ap.get_mpz_t(), dp.get_mpz_t());
  Int total = 0;
  for (const auto& [r, c] : tail) {
    Int rhs = mod_floor(Int(b - r), d);
    if (rhs % d1 != 0) continue;
    Int i0 = dp == 1 ? Int(0) : mod_floor(Int(Int(rhs / d1) * inv), dp);
    total += c * progression_count(N, i0, dp);
  }
  return total;
}

inline Int gcd_all(const std::vector<Int>& a, const Int& d) {
  Int g = d;
  for (const Int& x : a) g = gcd(g, x);
  return abs(g);
}

inline void check_counting_args(long m, const Int& N, const Int& modulus, const std::vector<Int>& a) {
  if (m < 1 || a.size() != static_cast<size_t>(m)) fail(ErrorKind::Precondition, "need m >= 1 coefficients");
  if (N < 1) fail(ErrorKind::Precondition, "need N >= 1");
  if (modulus < 1) fail(ErrorKind::Precondition, "need a positive modulus");
  if (gcd_all(a, modulus) != 1) fail(ErrorKind::Precondition, "gcd(a_1, ..., a_m, modulus) != 1");
}

} // namespace detail

// |{i in [1,N]^m : a.i = b (mod d)}| = N^m/d + E with |E| <= (3N)^(m-1).
inline CongruenceCount count_congruence(long m, const Int& N, const Int& d, const std::vector<Int>& a, const Int& b) {
  detail::check_counting_args(m, N, d, a);
  CongruenceCount c;
  c.m = m;
  c.N = N;
  c.modulus = d;
  c.a = a;
  c.b = b;
  c.count = detail::congruence_count(a, N, d, b);
  c.main_term = Rat(ipow(N, m)) / d;
  c.error = Rat(c.count) - c.main_term;
  c.error_bound = ipow(Int(3 * N), m - 1);
  c.report = BoundReport("combinat.congruence_count",
                         {{"m", m}, {"N", to_string(N)}, {"d", to_string(d)}, {"count", to_string(c.count)}});
  c.report.check(Real(abs(c.error)), Real(Rat(c.error_bound)));
  c.report.finish();
  return c;
}

// |{i in [1,N]^m : gcd(a.i, D) = 1}| = N^m prod_{p|D}(1 - 1/p) + E with
// |E| <= 2^omega(D) (3N)^(m-1), counted by inclusion-exclusion over the
// squarefree divisors of D. Each divisor's congruence bound is checked too.
inline CongruenceCount count_coprime(long m, const Int& N, const Int& D, const std::vector<Int>& a) {
  detail::check_counting_args(m, N, D, a);
  CongruenceCount c;
  c.m = m;
  c.N = N;
  c.modulus = D;
  c.a = a;
  c.report = BoundReport("combinat.coprime_count", {{"m", m}, {"N", to_string(N)}, {"D", to_string(D)}});
  std::vector<Int> primes = prime_divisors(D);
  Rat density = 1;
  for (const Int& p : primes) density *= Rat(p - 1) / p;
  c.count = 0;
  for (unsigned long s = 0; s < (1UL << primes.size()); ++s) {
    Int d = 1;
    for (size_t k = 0; k < primes.size(); ++k)
      if (s >> k & 1UL) d *= primes[k];
    CongruenceCount sub = count_congruence(m, N, d, a, Int(0));
    c.report.merge(sub.report);
    if (__builtin_popcountl(s) % 2)
      c.count -= sub.count;
    else
      c.count += sub.count;
  }
  c.main_term = Rat(ipow(N, m)) * density;
  c.error = Rat(c.count) - c.main_term;
  c.error_bound = ipow(Int(2), primes.size()) * ipow(Int(3 * N), m - 1);
  c.report.check(Real(abs(c.error)), Real(Rat(c.error_bound)));
  c.report.params["count"] = to_string(c.count);
  c.report.finish();
  return c;
}

// count >= N^(m - eps) for a coprimality count with D <= N^kappa. The lower
// bound is only claimed for large N; below the explicit threshold
// 2^omega(D) 3^(m-1) <= N^eps / 2 (with eps <= 1/2) a failure is INCONCLUSIVE.
inline BoundReport coprime_lower_bound(const CongruenceCount& c, const Rat& eps, const Rat& kappa,
                                       const numeric::PrecisionPolicy& policy = {}) {
  if (c.b) fail(ErrorKind::Precondition, "need a coprimality count");
  if (eps <= 0 || kappa <= 0) fail(ErrorKind::Precondition, "need eps, kappa > 0");
  // D <= N^kappa  <=>  D^q <= N^p for kappa = p/q
  if (ipow(c.modulus, kappa.get_den().get_ui()) > ipow(c.N, kappa.get_num().get_ui()))
    fail(ErrorKind::Precondition, "D > N^kappa");
  Rat e = std::min(eps, Rat(1, 2));
  Int lhs_t = ipow(Int(ipow(Int(2), omega(c.modulus) + 1) * ipow(Int(3), c.m - 1)), e.get_den().get_ui());
  bool above = lhs_t <= ipow(c.N, e.get_num().get_ui());
  BoundReport rep("combinat.coprime_lower_bound", {{"m", c.m},
                                                    {"N", to_string(c.N)},
                                                    {"D", to_string(c.modulus)},
                                                    {"eps", to_string(eps)},
                                                    {"kappa", to_string(kappa)},
                                                    {"above_threshold", above}});
  Certified r = rep.check(pow(Real(Rat(c.N)), Rat(c.m) - eps), Real(Rat(c.count)), Relation::LE, policy);
  if (r.verdict == Verdict::VIOLATED && !above) {
    rep.verdict = Verdict::VERIFIED;
    rep.inconclusive("N is below the explicit threshold and the lower bound fails here");
  }
  return rep.finish();
}

} // namespace smallval::combinat
