#pragma once

// A-equivalence in an abelian group, logarithmic numerator and denominator,
// the reachability sets C_k, O, D_k, and the partition of a pair (E, F) with
// O(E) contained in F into blocks anchored at points of E.
//
// A group context supplies: Element, mul, pow, equal/less, is_torsion, and
// relation(x, y): the least n >= 1 and the m with y^n = x^m (x non-torsion),
// or nothing when no power of y lies in <x>.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "smallval/arith.hpp"
#include "smallval/report.hpp"

namespace smallval::groups {

// Nonzero rationals under multiplication; torsion {1, -1}.
struct RationalGroup {
  using Element = Rat;

  static std::string name() { return "Q*"; }
  Element identity() const { return 1; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element pow(const Element& a, const Int& e) const {
    require(e.fits_slong_p(), "exponent too large");
    return rpow(a, e.get_si());
  }
  bool valid(const Element& a) const { return a != 0; }
  bool is_torsion(const Element& a) const { return a == 1 || a == -1; }
  bool less(const Element& a, const Element& b) const { return a < b; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  nlohmann::json to_json(const Element& a) const { return a.get_str(); }
  Element parse(const std::string& s) const { return parse_rational(s); }

  std::optional<std::pair<Int, Int>> relation(const Element& x, const Element& y) const {
    require(valid(x) && valid(y), "zero is not in the group");
    require(!is_torsion(x), "relation needs a non-torsion base");
    auto ex = exponents(x), ey = exponents(y);
    // y = s_y * prod p^b, x = s_x * prod p^a; need b = (u/v) a
    std::optional<Rat> ratio;
    for (auto& [p, a] : ex) {
      Int b = ey.count(p) ? ey[p] : Int(0);
      Rat r(b, a);
      r.canonicalize();
      if (ratio && *ratio != r) return std::nullopt;
      ratio = r;
    }
    for (auto& [p, b] : ey)
      if (!ex.count(p)) return std::nullopt;
    Int u = ratio->get_num(), v = ratio->get_den();
    int sx = x < 0 ? -1 : 1, sy = y < 0 ? -1 : 1;
    auto sgn_pow = [](int s, const Int& e) { return (s == -1 && mpz_odd_p(e.get_mpz_t())) ? -1 : 1; };
    Int k = sgn_pow(sy, v) == sgn_pow(sx, u) ? 1 : 2;
    return std::make_pair(u * k, v * k);
  }

private:
  static std::map<Int, Int> exponents(const Rat& q) {
    std::map<Int, Int> e;
    for (auto& [p, k] : factor_integer(abs(q.get_num()))) e[p] += k;
    for (auto& [p, k] : factor_integer(q.get_den())) e[p] -= k;
    return e;
  }
};

// Z^s under addition; no torsion. With a prime basis, elements are ordered
// like the rationals prod p_j^(i_j) they correspond to.
struct LatticeGroup {
  using Element = std::vector<Int>;

  size_t s = 1;
  std::vector<Int> basis;

  explicit LatticeGroup(size_t dim, std::vector<Int> prime_basis = {}) : s(dim), basis(std::move(prime_basis)) {
    require(basis.empty() || basis.size() == s, "basis length must match dimension");
  }
  static std::string name() { return "Z^s"; }
  Element identity() const { return Element(s, Int(0)); }
  Element mul(const Element& a, const Element& b) const {
    Element c(s);
    for (size_t i = 0; i < s; ++i) c[i] = a[i] + b[i];
    return c;
  }
  Element pow(const Element& a, const Int& e) const {
    Element c(s);
    for (size_t i = 0; i < s; ++i) c[i] = a[i] * e;
    return c;
  }
  bool valid(const Element& a) const { return a.size() == s; }
  bool is_torsion(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [](const Int& v) { return v == 0; });
  }
  bool less(const Element& a, const Element& b) const {
    if (basis.empty()) return a < b;
    return to_rational(a) < to_rational(b);
  }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  nlohmann::json to_json(const Element& a) const {
    nlohmann::json j = nlohmann::json::array();
    for (auto& v : a) j.push_back(v.get_str());
    return j;
  }
  Rat to_rational(const Element& a) const {
    require(!basis.empty(), "lattice group has no prime basis");
    Rat q = 1;
    for (size_t i = 0; i < s; ++i) q *= rpow(Rat(basis[i]), a[i].get_si());
    return q;
  }

  std::optional<std::pair<Int, Int>> relation(const Element& x, const Element& y) const {
    require(!is_torsion(x), "relation needs a non-torsion base");
    std::optional<Rat> ratio;
    for (size_t i = 0; i < s; ++i) {
      if (x[i] == 0) {
        if (y[i] != 0) return std::nullopt;
        continue;
      }
      Rat r(y[i], x[i]);
      r.canonicalize();
      if (ratio && *ratio != r) return std::nullopt;
      ratio = r;
    }
    return std::make_pair(Int(ratio->get_num()), Int(ratio->get_den()));
  }
};

// The rationals under addition (x^p means p x); torsion {0}.
struct AdditiveRationals {
  using Element = Rat;

  static std::string name() { return "(Q,+)"; }
  Element identity() const { return 0; }
  Element mul(const Element& a, const Element& b) const { return a + b; }
  Element pow(const Element& a, const Int& e) const { return a * Rat(e); }
  bool valid(const Element&) const { return true; }
  bool is_torsion(const Element& a) const { return a == 0; }
  bool less(const Element& a, const Element& b) const { return a < b; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  nlohmann::json to_json(const Element& a) const { return a.get_str(); }

  std::optional<std::pair<Int, Int>> relation(const Element& x, const Element& y) const {
    require(!is_torsion(x), "relation needs a non-torsion base");
    Rat r = y / x;
    return std::make_pair(Int(r.get_num()), Int(r.get_den()));
  }
};

// A finite set of distinct primes with |A| >= 2.
class PrimeSet {
public:
  explicit PrimeSet(std::vector<Int> ps) : p_(std::move(ps)) {
    std::sort(p_.begin(), p_.end());
    require(std::adjacent_find(p_.begin(), p_.end()) == p_.end(), "prime set has repeated entries");
    require(p_.size() >= 2, "prime set needs at least two primes");
    for (auto& p : p_) require(is_prime(p), "prime set contains " + p.get_str() + ", which is not prime");
  }
  const std::vector<Int>& primes() const { return p_; }
  size_t size() const { return p_.size(); }
  bool contains(const Int& p) const { return std::binary_search(p_.begin(), p_.end(), p); }
  // Number of prime factors of n counted with multiplicity, when n > 0 is
  // A-smooth; nothing otherwise.
  std::optional<unsigned> smooth_length(Int n) const {
    if (n <= 0) return std::nullopt;
    unsigned len = 0;
    for (auto& p : p_)
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++len;
      }
    if (n != 1) return std::nullopt;
    return len;
  }
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (auto& p : p_) j.push_back(p.get_str());
    return j;
  }

private:
  std::vector<Int> p_;
};

// Sorted duplicate-free element sets in the context's order.
template <class Ctx>
class ElementSet {
public:
  using Element = typename Ctx::Element;

  explicit ElementSet(const Ctx& ctx) : ctx_(&ctx) {}
  ElementSet(const Ctx& ctx, std::vector<Element> v) : ctx_(&ctx), v_(std::move(v)) { normalize(); }

  const std::vector<Element>& items() const { return v_; }
  size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  bool contains(const Element& x) const {
    auto it = std::lower_bound(v_.begin(), v_.end(), x, cmp());
    return it != v_.end() && ctx_->equal(*it, x);
  }
  void insert(const Element& x) {
    auto it = std::lower_bound(v_.begin(), v_.end(), x, cmp());
    if (it == v_.end() || !ctx_->equal(*it, x)) v_.insert(it, x);
  }
  ElementSet minus(const ElementSet& o) const {
    ElementSet r(*ctx_);
    for (auto& x : v_)
      if (!o.contains(x)) r.v_.push_back(x);
    return r;
  }
  ElementSet intersect(const ElementSet& o) const {
    ElementSet r(*ctx_);
    for (auto& x : v_)
      if (o.contains(x)) r.v_.push_back(x);
    return r;
  }
  bool subset_of(const ElementSet& o) const {
    return std::all_of(v_.begin(), v_.end(), [&](const Element& x) { return o.contains(x); });
  }
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (auto& x : v_) j.push_back(ctx_->to_json(x));
    return j;
  }

private:
  auto cmp() const {
    return [c = ctx_](const Element& a, const Element& b) { return c->less(a, b); };
  }
  void normalize() {
    std::sort(v_.begin(), v_.end(), cmp());
    v_.erase(std::unique(v_.begin(), v_.end(), [c = ctx_](const Element& a, const Element& b) { return c->equal(a, b); }),
             v_.end());
  }
  const Ctx* ctx_;
  std::vector<Element> v_;
};

// Minimal relation (m, n) with y^n = x^m when x ~_A y; nothing otherwise.
// x ~_A y iff m > 0 and both m and n are A-smooth.
template <class Ctx>
std::optional<std::pair<Int, Int>> equivalence_relation(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x,
                                                        const typename Ctx::Element& y) {
  auto rel = ctx.relation(x, y);
  if (!rel) return std::nullopt;
  auto& [m, n] = *rel;
  if (!A.smooth_length(m) || !A.smooth_length(n)) return std::nullopt;
  return rel;
}

template <class Ctx>
bool equivalent(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x, const typename Ctx::Element& y) {
  return equivalence_relation(ctx, A, x, y).has_value();
}

// (num_x(y), den_x(y)).
template <class Ctx>
std::pair<Int, Int> den_num(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x, const typename Ctx::Element& y) {
  if (ctx.is_torsion(x)) fail(ErrorKind::Precondition, "base point is torsion");
  auto rel = equivalence_relation(ctx, A, x, y);
  if (!rel) fail(ErrorKind::Precondition, "not A-equivalent");
  return *rel;
}

// y in C_k(x): x^(p_1...p_k) = y^(q_1...q_k) with all p_i, q_i in A. With
// (m, n) the minimal relation, this holds iff Omega(m) = Omega(n) <= k.
template <class Ctx>
bool in_reach(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x, const typename Ctx::Element& y, unsigned k) {
  if (k == 0) return ctx.equal(x, y);
  auto rel = equivalence_relation(ctx, A, x, y);
  if (!rel) return false;
  unsigned lm = *A.smooth_length(rel->first), ln = *A.smooth_length(rel->second);
  return lm == ln && lm <= k;
}

// O(E) = {y^p : y in E, p in A}.
template <class Ctx>
ElementSet<Ctx> prime_image(const Ctx& ctx, const PrimeSet& A, const ElementSet<Ctx>& E) {
  std::vector<typename Ctx::Element> out;
  for (auto& y : E.items())
    for (auto& p : A.primes()) out.push_back(ctx.pow(y, p));
  return ElementSet<Ctx>(ctx, std::move(out));
}

template <class Ctx>
struct ReachSets {
  ElementSet<Ctx> C, O, D;
};

// C_k(x, E), O(E) and D_k(x, E) = O(C_k(x, E)).
template <class Ctx>
ReachSets<Ctx> reach_sets(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x, const ElementSet<Ctx>& E, unsigned k) {
  if (ctx.is_torsion(x)) fail(ErrorKind::Precondition, "base point is torsion");
  ElementSet<Ctx> C(ctx);
  for (auto& y : E.items())
    if (in_reach(ctx, A, x, y, k)) C.insert(y);
  ElementSet<Ctx> O = prime_image(ctx, A, E);
  ElementSet<Ctx> D = prime_image(ctx, A, C);
  return {C, O, D};
}

template <class Ctx>
struct PartitionResult {
  std::vector<typename Ctx::Element> anchors;
  std::vector<ElementSet<Ctx>> E_blocks;
  std::vector<ElementSet<Ctx>> F_blocks;  // r blocks
  ElementSet<Ctx> remainder;
  std::vector<unsigned> levels;           // the k used for each block

  explicit PartitionResult(const Ctx& ctx) : remainder(ctx) {}
  size_t r() const { return anchors.size(); }

  nlohmann::json to_json(const Ctx& ctx) const {
    nlohmann::json blocks = nlohmann::json::array();
    for (size_t i = 0; i < r(); ++i)
      blocks.push_back({{"anchor", ctx.to_json(anchors[i])}, {"k", levels[i]}, {"E", E_blocks[i].to_json()}, {"F", F_blocks[i].to_json()}});
    return {{"r", r()}, {"blocks", blocks}, {"remainder", remainder.to_json()}};
  }
};

// |F| <= binom(|A|, l+2) / (2^(l+1) (l+1)!), as an exact comparison.
inline bool partition_size_hypothesis(size_t F, size_t A, unsigned l) {
  Int lhs = Int(static_cast<unsigned long>(F)) * ipow(Int(2), l + 1) * factorial(l + 1);
  return lhs <= binomial(static_cast<unsigned long>(A), l + 2);
}

// Blocks E = E_1 + ... + E_r, F = F_1 + ... + F_r + F_{r+1} with
// E_i in C_l(x_i), F_i in O(E_i), |F_i| >= (|A|-l)/(2(l+1)) |E_i|.
// Anchors are taken in the context order; for each anchor the smallest
// k <= l with |D_k \ O(E \ C_k)| >= (|A|-k)/(2(k+1)) |C_k| is used.
template <class Ctx>
PartitionResult<Ctx> partition(const Ctx& ctx, const PrimeSet& A, const ElementSet<Ctx>& E, const ElementSet<Ctx>& F, unsigned l) {
  if (E.empty()) fail(ErrorKind::Precondition, "E must be non-empty");
  if (F.empty()) fail(ErrorKind::Precondition, "F must be non-empty");
  if (l + 2 > A.size()) fail(ErrorKind::Precondition, "l must satisfy 0 <= l <= |A| - 2");
  for (auto& x : E.items())
    if (ctx.is_torsion(x)) fail(ErrorKind::Precondition, "E meets the torsion subgroup");
  if (!prime_image(ctx, A, E).subset_of(F)) fail(ErrorKind::Precondition, "O(E) is not contained in F");
  if (!partition_size_hypothesis(F.size(), A.size(), l)) fail(ErrorKind::Precondition, "|F| exceeds binom(|A|, l+2) / (2^(l+1) (l+1)!)");

  PartitionResult<Ctx> out(ctx);
  ElementSet<Ctx> restE = E, restF = F;
  while (!restE.empty()) {
    const auto& x = restE.items().front();
    bool found = false;
    for (unsigned k = 0; k <= l && !found; ++k) {
      ReachSets<Ctx> rs = reach_sets(ctx, A, x, restE, k);
      ElementSet<Ctx> others = prime_image(ctx, A, restE.minus(rs.C));
      ElementSet<Ctx> F1 = rs.D.minus(others);
      Int lhs = Int(2 * (k + 1)) * Int(static_cast<unsigned long>(F1.size()));
      Int rhs = Int(static_cast<unsigned long>(A.size() - k)) * Int(static_cast<unsigned long>(rs.C.size()));
      if (lhs >= rhs) {
        out.anchors.push_back(x);
        out.levels.push_back(k);
        out.E_blocks.push_back(rs.C);
        out.F_blocks.push_back(F1);
        restE = restE.minus(rs.C);
        restF = restF.minus(F1);
        found = true;
      }
    }
    if (!found) fail(ErrorKind::Internal, "no admissible level for the current anchor");
  }
  out.remainder = restF;
  return out;
}

// Re-checks a partition from scratch: block structure and conditions a), b), c).
template <class Ctx>
BoundReport verify_partition(const Ctx& ctx, const PrimeSet& A, const ElementSet<Ctx>& E, const ElementSet<Ctx>& F, unsigned l,
                             const PartitionResult<Ctx>& res) {
  BoundReport rep("groups.partition", {{"group", Ctx::name()}, {"A", A.to_json()}, {"l", l}, {"E", E.size()}, {"F", F.size()}});
  rep.params["r"] = res.r();
  if (res.r() == 0) {
    rep.fail_with(E.empty() ? "empty E" : "no blocks for non-empty E");
    return rep.finish();
  }
  if (res.E_blocks.size() != res.r() || res.F_blocks.size() != res.r()) {
    rep.fail_with("block counts do not match r");
    return rep.finish();
  }
  // E-blocks partition E; F-blocks and remainder partition F
  auto is_partition = [&](const std::vector<const ElementSet<Ctx>*>& parts, const ElementSet<Ctx>& whole) {
    size_t total = 0;
    ElementSet<Ctx> seen(ctx);
    for (auto* p : parts) {
      total += p->size();
      for (auto& x : p->items()) {
        if (!whole.contains(x) || seen.contains(x)) return false;
        seen.insert(x);
      }
    }
    return total == whole.size();
  };
  std::vector<const ElementSet<Ctx>*> eparts, fparts;
  for (auto& b : res.E_blocks) eparts.push_back(&b);
  for (auto& b : res.F_blocks) fparts.push_back(&b);
  fparts.push_back(&res.remainder);
  if (!is_partition(eparts, E)) rep.fail_with("E-blocks do not partition E");
  if (!is_partition(fparts, F)) rep.fail_with("F-blocks do not partition F");
  Rat factor = Rat(static_cast<long>(A.size()) - static_cast<long>(l)) / (2 * (static_cast<long>(l) + 1));
  for (size_t i = 0; i < res.r(); ++i) {
    if (res.E_blocks[i].empty()) rep.fail_with("empty E-block");
    for (auto& y : res.E_blocks[i].items())
      if (!in_reach(ctx, A, res.anchors[i], y, l)) rep.fail_with("E-block " + std::to_string(i) + " leaves C_l(x_i)");
    if (!res.F_blocks[i].subset_of(prime_image(ctx, A, res.E_blocks[i])))
      rep.fail_with("F-block " + std::to_string(i) + " leaves O(E_i)");
    rep.check(Real(factor * Rat(static_cast<long>(res.E_blocks[i].size()))), Real(static_cast<long>(res.F_blocks[i].size())));
  }
  return rep.finish();
}

// |D_k| >= (|A|-k)/(k+1) |C_k|, exact.
template <class Ctx>
BoundReport reach_lower_bound(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x, const ElementSet<Ctx>& E, unsigned k) {
  BoundReport rep("groups.reach_lower_bound", {{"group", Ctx::name()}, {"k", k}, {"x", ctx.to_json(x)}});
  ReachSets<Ctx> rs = reach_sets(ctx, A, x, E, k);
  Rat lhs = Rat(static_cast<long>(A.size()) - static_cast<long>(k)) / (static_cast<long>(k) + 1) * static_cast<long>(rs.C.size());
  rep.check(Real(lhs), Real(static_cast<long>(rs.D.size())));
  return rep.finish();
}

// |D_k(x,E) & O(E \ C_k(x,E))| <= (k+1) |C_{k+1}(x,E)|, exact.
template <class Ctx>
BoundReport reach_overlap_bound(const Ctx& ctx, const PrimeSet& A, const typename Ctx::Element& x, const ElementSet<Ctx>& E, unsigned k) {
  BoundReport rep("groups.reach_overlap_bound", {{"group", Ctx::name()}, {"k", k}, {"x", ctx.to_json(x)}});
  ReachSets<Ctx> rs = reach_sets(ctx, A, x, E, k);
  ElementSet<Ctx> overlap = rs.D.intersect(prime_image(ctx, A, E.minus(rs.C)));
  ReachSets<Ctx> next = reach_sets(ctx, A, x, E, k + 1);
  rep.check(Real(static_cast<long>(overlap.size())), Real(static_cast<long>((k + 1) * next.C.size())));
  return rep.finish();
}

// Largest |F| allowed by the partition size hypothesis.
inline size_t partition_size_cap(size_t A, unsigned l) {
  Int den = ipow(Int(2), l + 1) * factorial(l + 1);
  Int cap = binomial(static_cast<unsigned long>(A), l + 2) / den;
  return cap.get_ui();
}

// Builds (E, F) satisfying the partition preconditions: candidates are added
// to E in the given order while |O(E)| stays within the cap, then F = O(E)
// is topped up from extras. E may come back empty.
template <class Ctx>
std::pair<ElementSet<Ctx>, ElementSet<Ctx>> greedy_instance(const Ctx& ctx, const PrimeSet& A, unsigned l,
                                                             const std::vector<typename Ctx::Element>& candidates,
                                                             const std::vector<typename Ctx::Element>& extras) {
  size_t cap = partition_size_cap(A.size(), l);
  ElementSet<Ctx> E(ctx), O(ctx);
  for (auto& c : candidates) {
    if (ctx.is_torsion(c) || E.contains(c)) continue;
    ElementSet<Ctx> O2 = O;
    for (auto& p : A.primes()) O2.insert(ctx.pow(c, p));
    if (O2.size() > cap) continue;
    E.insert(c);
    O = std::move(O2);
  }
  ElementSet<Ctx> F = O;
  for (auto& e : extras) {
    if (F.size() >= cap) break;
    F.insert(e);
  }
  return {E, F};
}

// Random candidates in Q*: signed powers b^e of a few bases with exponents
// sharing many prime factors, so that the sets O(y) overlap.
inline std::vector<Rat> random_rational_candidates(Rng& rng, size_t count) {
  static const std::vector<Rat> bases = {Rat(2), Rat(3), Rat(6), Rat(2, 3), Rat(5), Rat(10, 7)};
  static const std::vector<long> exps = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18};
  std::vector<Rat> out;
  const Rat& b = bases[random_long(rng, 0, static_cast<long>(bases.size()) - 1)];
  for (size_t i = 0; i < count; ++i) {
    bool other_base = random_long(rng, 0, 3) == 0;
    const Rat& base = other_base ? bases[random_long(rng, 0, static_cast<long>(bases.size()) - 1)] : b;
    long e = exps[random_long(rng, 0, static_cast<long>(exps.size()) - 1)];
    if (random_long(rng, 0, 4) == 0) e = -e;
    Rat v = rpow(base, e);
    if (random_long(rng, 0, 2) == 0) v = -v;
    out.push_back(v);
  }
  return out;
}

} // namespace smallval::groups
