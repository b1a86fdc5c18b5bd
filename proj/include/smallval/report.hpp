#pragma once

// A verified inequality (or a family of them) with its certified sides.

#include <chrono>
#include <string>

#include <json.hpp>

#include "smallval/real.hpp"

namespace smallval {

using numeric::Certified;
using numeric::ComplexEnclosure;
using numeric::Real;
using numeric::RealInterval;
using numeric::Relation;
using numeric::Verdict;

struct BoundReport {
  std::string claim_id;
  nlohmann::json params = nlohmann::json::object();
  // The binding comparison: the one with the smallest certified margin.
  RealInterval lhs, rhs;
  Verdict verdict = Verdict::VERIFIED;
  long precision_bits = 0;
  double elapsed_ms = 0;
  long checks = 0;
  std::string note;

  BoundReport() = default;
  explicit BoundReport(std::string id, nlohmann::json p = nlohmann::json::object())
      : claim_id(std::move(id)), params(std::move(p)), start_(std::chrono::steady_clock::now()) {}

  bool verified() const { return verdict == Verdict::VERIFIED; }
  bool violated() const { return verdict == Verdict::VIOLATED; }

  // Folds one comparison into the report. VIOLATED dominates INCONCLUSIVE,
  // which dominates VERIFIED; the displayed sides follow the same order and
  // then the smallest margin.
  void absorb(const Certified& c) {
    ++checks;
    precision_bits = std::max<long>(precision_bits, c.precision_bits);
    bool take = checks == 1 || rank(c.verdict) > rank(verdict);
    if (!take && rank(c.verdict) == rank(verdict)) {
      RealInterval m_new = c.rhs - c.lhs, m_old = rhs - lhs;
      take = m_new.lo() < m_old.lo();
    }
    if (rank(c.verdict) > rank(verdict)) verdict = c.verdict;
    if (take) {
      lhs = c.lhs;
      rhs = c.rhs;
    }
  }
  // Certifies lhs <= rhs (or <) and folds the outcome in.
  Certified check(const Real& l, const Real& r, Relation rel = Relation::LE, const numeric::PrecisionPolicy& policy = {}) {
    Certified c = numeric::certify(l, r, rel, policy);
    absorb(c);
    return c;
  }
  // Folds a sub-report in, keeping its binding sides when it is worse.
  void merge(const BoundReport& o) {
    if (o.checks == 0) {
      if (rank(o.verdict) > rank(verdict)) verdict = o.verdict;
      return;
    }
    Certified c;
    c.verdict = o.verdict;
    c.lhs = o.lhs;
    c.rhs = o.rhs;
    c.precision_bits = o.precision_bits;
    long before = checks;
    absorb(c);
    checks = before + o.checks;
  }
  void fail_with(const std::string& why) {
    verdict = Verdict::VIOLATED;
    note = why;
  }
  void inconclusive(const std::string& why) {
    if (verdict == Verdict::VERIFIED) verdict = Verdict::INCONCLUSIVE;
    note = why;
  }
  BoundReport& finish() {
    elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return *this;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"claim_id", claim_id},
                        {"params", params},
                        {"lhs", ComplexEnclosure(lhs).to_json()},
                        {"rhs", ComplexEnclosure(rhs).to_json()},
                        {"verdict", numeric::to_string(verdict)},
                        {"precision_bits", precision_bits},
                        {"checks", checks},
                        {"elapsed_ms", elapsed_ms}};
    if (!note.empty()) j["note"] = note;
    return j;
  }

private:
  static int rank(Verdict v) { return v == Verdict::VIOLATED ? 2 : v == Verdict::INCONCLUSIVE ? 1 : 0; }
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace smallval
