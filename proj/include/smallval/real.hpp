#pragma once

// Lazily evaluated real expressions that can be re-enclosed at any precision.
// Subexpressions that are exact rationals are folded at construction, so
// comparisons between rational quantities never touch floating point.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "smallval/complex.hpp"

namespace smallval::numeric {

struct PrecisionPolicy {
  Prec initial_bits = 128;
  Prec max_bits = 16384;
};

class Real {
public:
  using Evaluator = std::function<RealInterval(Prec)>;

  Real() : Real(Rat(0)) {}
  Real(const Rat& q) : node_(std::make_shared<Node>()) { node_->exact = q; }
  Real(const Int& v) : Real(Rat(v)) {}
  Real(long v) : Real(Rat(v)) {}
  Real(int v) : Real(Rat(v)) {}

  // An opaque quantity given by an enclosure routine. The routine may throw an
  // Inconclusive error when the precision is insufficient.
  static Real from(Evaluator fn) {
    Real r;
    r.node_ = std::make_shared<Node>();
    r.node_->op = Op::Func;
    r.node_->fn = std::move(fn);
    return r;
  }

  const std::optional<Rat>& exact() const { return node_->exact; }
  bool is_exact() const { return node_->exact.has_value(); }

  RealInterval enclose(Prec prec) const {
    const Node& n = *node_;
    if (n.exact) return RealInterval::of(*n.exact, prec);
    switch (n.op) {
    case Op::Add: return n.kids[0].enclose(prec) + n.kids[1].enclose(prec);
    case Op::Sub: return n.kids[0].enclose(prec) - n.kids[1].enclose(prec);
    case Op::Mul: return n.kids[0].enclose(prec) * n.kids[1].enclose(prec);
    case Op::Div: return n.kids[0].enclose(prec) / n.kids[1].enclose(prec);
    case Op::Exp: return numeric::exp(n.kids[0].enclose(prec));
    case Op::Log: return numeric::log(n.kids[0].enclose(prec));
    case Op::Sqrt: return numeric::sqrt(n.kids[0].enclose(prec));
    case Op::Abs: return numeric::abs(n.kids[0].enclose(prec));
    case Op::Pow: {
      RealInterval base = n.kids[0].enclose(prec);
      if (n.q.get_den() == 1) {
        Int e = n.q.get_num();
        RealInterval p = numeric::pow(base, Int(abs(e)).get_ui());
        return e >= 0 ? p : RealInterval::of(1L, prec) / p;
      }
      return numeric::exp(RealInterval::of(n.q, prec) * numeric::log(base));
    }
    case Op::Max: {
      RealInterval r = n.kids[0].enclose(prec);
      for (size_t i = 1; i < n.kids.size(); ++i) r = numeric::max(r, n.kids[i].enclose(prec));
      return r;
    }
    case Op::Min: {
      RealInterval r = n.kids[0].enclose(prec);
      for (size_t i = 1; i < n.kids.size(); ++i) r = numeric::min(r, n.kids[i].enclose(prec));
      return r;
    }
    case Op::Func: return n.fn(prec);
    case Op::Const: break;
    }
    fail(ErrorKind::Internal, "malformed real expression");
  }

  friend Real operator+(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Real(*a.exact() + *b.exact());
    if (a.is_exact() && *a.exact() == 0) return b;
    if (b.is_exact() && *b.exact() == 0) return a;
    return binary(Op::Add, a, b);
  }
  friend Real operator-(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Real(*a.exact() - *b.exact());
    if (b.is_exact() && *b.exact() == 0) return a;
    return binary(Op::Sub, a, b);
  }
  friend Real operator-(const Real& a) { return Real(0) - a; }
  friend Real operator*(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Real(*a.exact() * *b.exact());
    if (a.is_exact() && *a.exact() == 1) return b;
    if (b.is_exact() && *b.exact() == 1) return a;
    if ((a.is_exact() && *a.exact() == 0) || (b.is_exact() && *b.exact() == 0)) return Real(0);
    return binary(Op::Mul, a, b);
  }
  friend Real operator/(const Real& a, const Real& b) {
    if (b.is_exact()) require(*b.exact() != 0, "division by exact zero");
    if (a.is_exact() && b.is_exact()) return Real(*a.exact() / *b.exact());
    if (b.is_exact() && *b.exact() == 1) return a;
    return binary(Op::Div, a, b);
  }

  friend Real exp(const Real& a) {
    if (a.is_exact() && *a.exact() == 0) return Real(1);
    return unary(Op::Exp, a);
  }
  friend Real log(const Real& a) {
    if (a.is_exact()) {
      require(*a.exact() > 0, "logarithm of a nonpositive rational");
      if (*a.exact() == 1) return Real(0);
    }
    return unary(Op::Log, a);
  }
  friend Real sqrt(const Real& a) {
    if (a.is_exact()) {
      const Rat& q = *a.exact();
      require(q >= 0, "square root of a negative rational");
      bool en = false, ed = false;
      Int rn = floor_root(q.get_num(), 2, &en), rd = floor_root(q.get_den(), 2, &ed);
      if (en && ed) return Real(Rat(rn, rd));
    }
    return unary(Op::Sqrt, a);
  }
  friend Real abs(const Real& a) {
    if (a.is_exact()) return Real(smallval::abs(*a.exact()));
    return unary(Op::Abs, a);
  }
  // a^q for rational q; a must be positive unless q is a nonnegative integer.
  friend Real pow(const Real& a, const Rat& q) {
    if (q == 0) return Real(1);
    if (q == 1) return a;
    if (a.is_exact()) {
      const Rat& b = *a.exact();
      if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Real(rpow(b, q.get_num().get_si()));
      if (b > 0 && q.get_num().fits_ulong_p() && q.get_den().fits_ulong_p()) {
        // exact when b^(num) has an exact den-th root
        Rat bp = rpow(b, q.get_num().get_si());
        bool en = false, ed = false;
        Int rn = floor_root(bp.get_num(), q.get_den().get_ui(), &en);
        Int rd = floor_root(bp.get_den(), q.get_den().get_ui(), &ed);
        if (en && ed) return Real(Rat(rn, rd));
      }
    }
    Real r = unary(Op::Pow, a);
    r.node_->q = q;
    return r;
  }
  friend Real max(const std::vector<Real>& xs) { return extremum(Op::Max, xs); }
  friend Real min(const std::vector<Real>& xs) { return extremum(Op::Min, xs); }
  friend Real max(const Real& a, const Real& b) { return extremum(Op::Max, {a, b}); }
  friend Real min(const Real& a, const Real& b) { return extremum(Op::Min, {a, b}); }

private:
  enum class Op { Const, Add, Sub, Mul, Div, Exp, Log, Sqrt, Abs, Pow, Max, Min, Func };
  struct Node {
    Op op = Op::Const;
    std::optional<Rat> exact;
    std::vector<Real> kids;
    Rat q;
    Evaluator fn;
  };

  static Real binary(Op op, const Real& a, const Real& b) {
    Real r;
    r.node_ = std::make_shared<Node>();
    r.node_->op = op;
    r.node_->kids = {a, b};
    return r;
  }
  static Real unary(Op op, const Real& a) {
    Real r;
    r.node_ = std::make_shared<Node>();
    r.node_->op = op;
    r.node_->kids = {a};
    return r;
  }
  static Real extremum(Op op, const std::vector<Real>& xs) {
    require(!xs.empty(), "extremum of an empty list");
    if (xs.size() == 1) return xs[0];
    bool all_exact = std::all_of(xs.begin(), xs.end(), [](const Real& x) { return x.is_exact(); });
    if (all_exact) {
      Rat best = *xs[0].exact();
      for (auto& x : xs) best = (op == Op::Max) ? std::max(best, *x.exact()) : std::min(best, *x.exact());
      return Real(best);
    }
    Real r;
    r.node_ = std::make_shared<Node>();
    r.node_->op = op;
    r.node_->kids = xs;
    return r;
  }

  std::shared_ptr<Node> node_;
};

// Outcome of comparing two real expressions with precision escalation.
struct Certified {
  Verdict verdict = Verdict::INCONCLUSIVE;
  RealInterval lhs, rhs;
  Prec precision_bits = 0;
  bool exact = false;
};

inline Certified certify(const Real& lhs, const Real& rhs, Relation rel = Relation::LE,
                         const PrecisionPolicy& policy = {}) {
  Certified out;
  if (lhs.is_exact() && rhs.is_exact()) {
    const Rat &a = *lhs.exact(), &b = *rhs.exact();
    bool holds = rel == Relation::LE ? a <= b : a < b;
    out.verdict = holds ? Verdict::VERIFIED : Verdict::VIOLATED;
    out.lhs = RealInterval::of(a, policy.initial_bits);
    out.rhs = RealInterval::of(b, policy.initial_bits);
    out.precision_bits = policy.initial_bits;
    out.exact = true;
    return out;
  }
  for (Prec prec = policy.initial_bits; prec <= policy.max_bits; prec *= 2) {
    out.precision_bits = prec;
    try {
      out.lhs = lhs.enclose(prec);
      out.rhs = rhs.enclose(prec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Inconclusive) throw;
      continue;
    }
    out.verdict = certified_compare(out.lhs, out.rhs, rel);
    if (out.verdict != Verdict::INCONCLUSIVE) return out;
  }
  out.verdict = Verdict::INCONCLUSIVE;
  return out;
}

// Encloses a single expression, escalating while the routine reports Inconclusive.
inline RealInterval enclose_escalating(const Real& x, const PrecisionPolicy& policy = {}) {
  for (Prec prec = policy.initial_bits; prec <= policy.max_bits; prec *= 2) {
    try {
      return x.enclose(prec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Inconclusive) throw;
    }
  }
  fail(ErrorKind::Inconclusive, "precision exhausted");
}

// True when x > 0 is certified (strictly), with escalation.
inline bool certainly_positive(const Real& x, const PrecisionPolicy& policy = {}) {
  return certify(Real(0), x, Relation::LT, policy).verdict == Verdict::VERIFIED;
}

} // namespace smallval::numeric
