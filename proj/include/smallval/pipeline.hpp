#pragma once

// Step trace of the rank argument: split off the cyclotomic part, find a
// subspace avoiding small cyclotomic values, build the prime set A and the
// point set E, bound the gcd Q of the shifted family, and report which of the
// two alternatives (Q small at a point of E, or a cluster of E) a point
// realizes. Each step records its inputs and outputs with digests; a failed
// hypothesis ends the trace with a typed event.

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smallval/combinat.hpp"
#include "smallval/cyclo.hpp"
#include "smallval/gcdbounds.hpp"

namespace smallval::pipeline {

using gcdbounds::Exponents;
using gcdbounds::SamplePoint;
using numeric::PolarPoint;
using numeric::PrecisionPolicy;
using polyz::IntPolynomial;

struct PipelineParams {
  long n = 1, m = 1;
  Rat beta = 1, sigma = 0, tau = 0, nu = 1, mu = 1, epsilon = 0;

  static Rat default_mu(long m, const Rat& sigma) { return Rat(m + 1) * sigma / (m + 5); }
  static Rat default_epsilon(long m, const Rat& beta, const Rat& sigma, const Rat& tau, const Rat& nu, const Rat& mu) {
    Rat gap = nu - 1 - beta + Rat(3 * m - 1) * sigma / (m + 5) + tau;
    return Rat(std::min(Rat(sigma - mu), gap)) / 8;
  }

  Int nI() const { return Int(n); }
  long t() const { return (floor_pow(nI(), tau).get_si() + 1) / 2; }
  long d() const { return n / t(); }
  long M() const { return floor_pow(nI(), mu).get_si(); }
  long N() const { return floor_pow(nI(), sigma).get_si(); }
  // the exponent range 1 <= i_k <= n^(sigma - mu) of the point set
  long N_I() const { return floor_pow(nI(), sigma - mu).get_si(); }
  Real log_X() const { return pow(Real(n), beta); }
  // first_step takes a rational log X; floor(n^beta) <= log X is the
  // conservative choice
  Rat log_X_floor() const { return Rat(floor_pow(nI(), beta)); }
  Real delta() const { return exp(-pow(Real(n), nu) / Real(6 * t())); }
  Real target() const { return exp(-pow(Real(n), nu)); }

  void validate() const {
    if (n < 1 || m < 1) fail(ErrorKind::Precondition, "need n, m >= 1");
    if (sigma < 0 || tau < 0) fail(ErrorKind::Precondition, "need sigma, tau >= 0");
    if (beta <= 0 || nu <= 0 || mu <= 0) fail(ErrorKind::Precondition, "need beta, nu, mu > 0");
    if (t() < 1) fail(ErrorKind::Precondition, "t must be positive");
  }

  // Existence range of the box principle and the hypotheses of the
  // non-existence theorem; informational.
  nlohmann::json conditions() const {
    Rat ms = Rat(m) * sigma;
    Rat nu_min = m >= 2 ? Rat(1 + beta - Rat(3 * m - 1) * sigma / (m + 5) - tau) : Rat(1 + beta - Rat(5) * sigma / 11 - tau);
    return {{"existence", {{"m sigma + tau < 1", ms + tau < 1}, {"beta > (m+1) sigma + tau", beta > ms + sigma + tau}}},
            {"non_existence",
             {{"(5m+1)/(m+5) sigma + tau < 1", Rat(5 * m + 1) * sigma / (m + 5) + tau < 1},
              {"beta >= 1 + sigma", beta >= 1 + sigma},
              {"nu > nu_min", nu > nu_min},
              {"nu_min", nu_min.get_str()}}}};
  }

  nlohmann::json to_json() const {
    return {{"n", n}, {"m", m}, {"beta", beta.get_str()}, {"sigma", sigma.get_str()}, {"tau", tau.get_str()},
            {"nu", nu.get_str()}, {"mu", mu.get_str()}, {"epsilon", epsilon.get_str()}};
  }
};

namespace detail {

inline void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

// FNV-1a over the JSON text, timing fields removed.
inline std::string digest(nlohmann::json j) {
  strip_timing(j);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline nlohmann::json enclosure(const Real& x, const PrecisionPolicy& policy) {
  return ComplexEnclosure(numeric::enclose_escalating(x, policy)).to_json();
}

// Outcome of an asymptotic comparison that is reported but not asserted.
inline nlohmann::json info_le(const Real& l, const Real& r, const PrecisionPolicy& policy) {
  numeric::Certified c = numeric::certify(l, r, Relation::LE, policy);
  return {{"holds", numeric::to_string(c.verdict)}, {"lhs", ComplexEnclosure(c.lhs).to_json()}, {"rhs", ComplexEnclosure(c.rhs).to_json()}};
}

inline nlohmann::json exps_json(const std::vector<long>& i) { return nlohmann::json(i); }

} // namespace detail

struct TraceEvent {
  std::string step;
  std::string verdict;  // VERIFIED, VIOLATED, INCONCLUSIVE, INFO or TERMINATED
  nlohmann::json inputs, outputs;
  std::string inputs_digest, outputs_digest;

  nlohmann::json to_json() const {
    return {{"step", step}, {"verdict", verdict}, {"inputs_digest", inputs_digest},
            {"outputs_digest", outputs_digest}, {"inputs", inputs}, {"outputs", outputs}};
  }
};

enum class Status { COMPLETE, TERMINATED };
enum class Alternative { Q_SMALL, CLUSTER, NONE };

inline const char* to_string(Status s) { return s == Status::COMPLETE ? "COMPLETE" : "TERMINATED"; }
inline const char* to_string(Alternative a) {
  return a == Alternative::Q_SMALL ? "Q_SMALL" : a == Alternative::CLUSTER ? "CLUSTER" : "NONE";
}

struct PipelineTrace {
  std::vector<TraceEvent> events;
  Status status = Status::COMPLETE;
  Alternative branch = Alternative::NONE;
  std::string route;  // "dirichlet" or "cyclotomic"
  size_t I_count = 0, E_count = 0;
  Int coprime_count = 0;

  bool violated() const {
    for (auto& e : events)
      if (e.verdict == "VIOLATED") return true;
    return false;
  }
  const TraceEvent* find(const std::string& step) const {
    for (auto& e : events)
      if (e.step == step) return &e;
    return nullptr;
  }
  nlohmann::json to_json() const {
    nlohmann::json ev = nlohmann::json::array();
    for (auto& e : events) ev.push_back(e.to_json());
    return {{"status", to_string(status)}, {"branch", to_string(branch)}, {"route", route}, {"events", ev}};
  }
};

namespace detail {

struct Recorder {
  PipelineTrace& trace;

  void emit(const std::string& step, nlohmann::json in, nlohmann::json out, const std::string& verdict) {
    TraceEvent e;
    e.step = step;
    e.verdict = verdict;
    e.inputs_digest = digest(in);
    e.outputs_digest = digest(out);
    e.inputs = std::move(in);
    e.outputs = std::move(out);
    trace.events.push_back(std::move(e));
  }
  void emit(const std::string& step, nlohmann::json in, const BoundReport& rep, nlohmann::json extra = nlohmann::json::object()) {
    extra["report"] = rep.to_json();
    emit(step, std::move(in), std::move(extra), numeric::to_string(rep.verdict));
  }
  PipelineTrace& terminate(const std::string& step, nlohmann::json in, const std::string& kind, const std::string& why) {
    emit(step, std::move(in), {{"kind", kind}, {"reason", why}}, "TERMINATED");
    trace.status = Status::TERMINATED;
    return trace;
  }
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::Precondition: return "Precondition";
  case ErrorKind::Hypothesis: return "Hypothesis";
  case ErrorKind::Inconclusive: return "Inconclusive";
  default: return "Other";
  }
}

inline bool terminating(ErrorKind k) {
  return k == ErrorKind::Precondition || k == ErrorKind::Hypothesis || k == ErrorKind::Inconclusive;
}

inline IntPolynomial binomial_difference(const std::vector<long>& a, const std::vector<long>& b) {
  long da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  return IntPolynomial::monomial(1, da) - IntPolynomial::monomial(1, db);
}

} // namespace detail

inline PipelineTrace run_pipeline(const PipelineParams& prm, const std::vector<PolarPoint>& xi, const IntPolynomial& p_in,
                                  const PrecisionPolicy& policy = {}) {
  prm.validate();
  if (static_cast<long>(xi.size()) != prm.m) fail(ErrorKind::Precondition, "m does not match the number of points");
  if (p_in.is_zero()) fail(ErrorKind::Precondition, "P must be nonzero");
  using detail::enclosure;
  using detail::info_le;

  PipelineTrace trace;
  detail::Recorder rec{trace};
  const long n = prm.n, m = prm.m, t = prm.t(), d = prm.d(), M = prm.M(), N = prm.N(), NI = prm.N_I();
  const Real delta = prm.delta();
  nlohmann::json xi_json = nlohmann::json::array();
  for (auto& x : xi) xi_json.push_back(x.to_string());

  // parameters
  {
    nlohmann::json in = prm.to_json();
    in["xi"] = xi_json;
    in["P"] = polyz::to_json(p_in);
    rec.emit("parameters", in,
             {{"t", t}, {"d", d}, {"M", M}, {"N", N}, {"N_I", NI}, {"log_X", enclosure(prm.log_X(), policy)},
              {"log_X_used", prm.log_X_floor().get_str()}, {"delta", enclosure(delta, policy)},
              {"conditions", prm.conditions()}},
             "INFO");
  }

  // the polynomial hypotheses that can be checked globally
  IntPolynomial P = p_in.primitive_part();
  {
    nlohmann::json in = {{"P", polyz::to_json(p_in)}, {"n", n}, {"beta", prm.beta.get_str()}};
    if (P.degree() > n) return rec.terminate("hypothesis", in, "Hypothesis", "deg P exceeds n");
    BoundReport rep("pipeline.height", in);
    rep.check(log(Real(P.height())), prm.log_X(), Relation::LE, policy);
    rep.finish();
    if (!rep.verified()) return rec.terminate("hypothesis", in, "Hypothesis", "H(P) <= exp(n^beta) not certified");
    rec.emit("hypothesis", in, rep, {{"P_primitive", polyz::to_json(P)}, {"content", p_in.content().get_str()}});
  }

  // P = T^r Phi^t P0
  cyclo::CycloSplit split = cyclo::cyclo_split(P, static_cast<unsigned long>(t));
  {
    nlohmann::json in = {{"P", polyz::to_json(P)}, {"t", t}};
    BoundReport rep("pipeline.cyclo_split", in);
    if (split.expand() != P) rep.fail_with("T^r Phi^t P0 differs from P");
    if (split.p0.constant_term() == 0) rep.fail_with("P0 vanishes at zero");
    for (auto& [k, e] : cyclo::cyclotomic_multiplicities(split.p0))
      if (static_cast<long>(e) >= t) rep.fail_with("Phi is not maximal: Phi_" + std::to_string(k) + "^t divides P0");
    rep.check(Real(split.phi.degree()), Real(d), Relation::LE, policy);
    rep.finish();
    nlohmann::json removed = nlohmann::json::array();
    if (auto dec = cyclo::cyclotomic_decomposition(split.phi))
      for (auto& [k, e] : *dec) removed.push_back({{"order", k}, {"multiplicity", e}});
    else
      rep.fail_with("Phi is not a product of cyclotomic polynomials");
    nlohmann::json out = split.to_json();
    out["cyclotomic_factors"] = removed;
    rec.emit("cyclo_split", in, rep, out);
  }

  // a, D and the proper subspace U = {normal . x = 0}
  std::vector<Int> a(m, Int(1));
  Int D = 1;
  linalg::IntVec normal;
  bool off_circle = false;
  for (auto& x : xi) off_circle = off_circle || x.compare_modulus_with_one() != 0;
  {
    nlohmann::json in = {{"xi", xi_json}, {"N", N}, {"d", d}, {"phi", polyz::to_json(split.phi)}};
    try {
      if (m >= 2 && off_circle) {
        trace.route = "dirichlet";
        // |Phi(xi^i)| >= (8 m N)^(-m d) off U, which must reach delta
        Real floor_value = Real(1 / rpow(Rat(8 * m * N), m * d));
        if (numeric::certify(delta, floor_value, Relation::LE, policy).verdict != Verdict::VERIFIED)
          return rec.terminate("dichotomy", in, "Hypothesis", "delta <= (8 m N)^(-m d) not certified");
        cyclo::DirichletResult dr = cyclo::dirichlet_subspace(N, xi, policy);
        normal = dr.normal;
        rec.emit("dichotomy", in, dr.report, {{"route", trace.route}, {"a", cyclo::detail::ints_json(a)}, {"D", "1"},
                                               {"normal", cyclo::detail::ints_json(normal)}, {"b", dr.b.get_str()}});
      } else {
        trace.route = "cyclotomic";
        cyclo::DichotomyResult dr = cyclo::cyclo_dichotomy(d, N, delta, split.phi, xi, policy);
        nlohmann::json out = dr.to_json();
        out.erase("report");
        out["route"] = trace.route;
        rec.emit("dichotomy", in, dr.report, out);
        if (dr.branch == cyclo::Branch::NEARBY_ROOT)
          return rec.terminate("dichotomy", in, "Hypothesis", "the points lie near a root of Phi: no subspace at this n");
        a = dr.a;
        D = dr.D;
        normal = dr.normal;
      }
    } catch (const Error& e) {
      if (!detail::terminating(e.kind())) throw;
      return rec.terminate("dichotomy", in, detail::kind_name(e.kind()), e.what());
    }
  }

  // A = primes in [M/2, M] not dividing D
  Exponents A;
  {
    nlohmann::json in = {{"M", M}, {"D", D.get_str()}, {"n", n}, {"mu", prm.mu.get_str()}};
    for (auto q : gcdbounds::primes_in_window(static_cast<unsigned long>(std::max(M, 0L))))
      if (D % Int(q) != 0) A.push_back(q);
    if (A.empty()) return rec.terminate("prime_set", in, "Hypothesis", "A is empty");
    BoundReport rep("pipeline.prime_set", in);
    rep.check(Real(Int(A.size())), pow(Real(n), prm.mu), Relation::LE, policy);
    rep.finish();
    rec.emit("prime_set", in, rep,
             {{"A", gcdbounds::exps_json(A)},
              {"asymptotic_lower_bound", info_le(pow(Real(n), prm.mu - prm.epsilon), Real(Int(A.size())), policy)}});
  }

  // I, U, U' and E
  std::vector<PolarPoint> E;
  std::vector<std::vector<long>> E_exps;
  {
    nlohmann::json in = {{"m", m}, {"N_I", NI}, {"a", cyclo::detail::ints_json(a)}, {"D", D.get_str()},
                         {"normal", cyclo::detail::ints_json(normal)}, {"xi", xi_json}};
    size_t in_I = 0, in_U = 0, in_U2 = 0;
    std::set<PolarPoint> seen;
    bool dependent = false;
    if (NI >= 1) {
      std::vector<long> i(m, 1);
      while (true) {
        Int L = 0;
        for (long k = 0; k < m; ++k) L += a[k] * i[k];
        if (gcd(L, D) == 1) {
          ++in_I;
          PolarPoint z = cyclo::monomial(xi, i);
          bool u = linalg::dot(normal, linalg::to_int_vec(i)) == 0;
          bool u2 = z.is_algebraic();
          in_U += u;
          in_U2 += u2;
          if (!u && !u2) {
            if (!seen.insert(z).second) dependent = true;
            E.push_back(z);
            E_exps.push_back(i);
          }
        }
        long k = 0;
        while (k < m && i[k] == NI) i[k++] = 1;
        if (k == m) break;
        ++i[k];
      }
    }
    trace.I_count = in_I;
    trace.E_count = E.size();
    if (dependent) return rec.terminate("grid", in, "Hypothesis", "two exponents give the same point: xi is multiplicatively dependent");
    combinat::CongruenceCount cc = combinat::count_coprime(m, Int(std::max(NI, 1L)), D, a);
    trace.coprime_count = NI >= 1 ? cc.count : Int(0);
    BoundReport rep("pipeline.grid", in);
    if (Int(in_I) != trace.coprime_count) rep.fail_with("|I| differs from the coprime lattice-point count");
    Int cap = ipow(Int(std::max(NI, 0L)), static_cast<unsigned long>(m - 1));
    rep.check(Real(Int(in_U)), Real(cap), Relation::LE, policy);
    rep.check(Real(Int(in_U2)), Real(cap), Relation::LE, policy);
    rep.check(Real(Int(Int(in_I) - Int(in_U) - Int(in_U2))), Real(Int(E.size())), Relation::LE, policy);
    rep.check(Real(Int(E.size())), pow(Real(n), Rat(m) * (prm.sigma - prm.mu)), Relation::LE, policy);
    rep.finish();
    nlohmann::json pts = nlohmann::json::array();
    for (size_t k = 0; k < E.size(); ++k) pts.push_back({{"i", E_exps[k]}, {"point", E[k].to_string()}});
    Rat expo = Rat(m) * (prm.sigma - prm.mu) - prm.epsilon;
    rec.emit("grid", in, rep,
             {{"I", in_I}, {"I_in_U", in_U}, {"I_in_U_alg", in_U2}, {"coprime_count", trace.coprime_count.get_str()},
              {"E", pts},
              {"asymptotic_I", info_le(Real(3) * pow(Real(n), expo), Real(Int(in_I)), policy)},
              {"asymptotic_E", info_le(pow(Real(n), expo), Real(Int(E.size())), policy)}});
    if (E.empty()) return rec.terminate("grid", in, "Hypothesis", "E is empty");
  }

  // Q = gcd{P0^[j](T^a)} and the product bound
  gcdbounds::FirstStepResult fs;
  {
    nlohmann::json in = {{"M", M}, {"n", n}, {"t", t}, {"log_X", prm.log_X_floor().get_str()},
                         {"A", gcdbounds::exps_json(A)}, {"E", E.size()}, {"P", polyz::to_json(P)}};
    try {
      fs = gcdbounds::first_step(M, n, t, prm.log_X_floor(), A, E, P, policy);
    } catch (const Error& e) {
      if (!detail::terminating(e.kind())) throw;
      return rec.terminate("first_step", in, detail::kind_name(e.kind()), e.what());
    }
    // smallness of P is only assumed where the argument uses it: at xi^a
    if (numeric::certify(fs.stats.delta_P, prm.target(), Relation::LE, policy).verdict != Verdict::VERIFIED)
      return rec.terminate("first_step", in, "Hypothesis", "|P^[j](xi^a)| <= exp(-n^nu) not certified on the used points");
    BoundReport rep = fs.report;
    BoundReport phi_rep("pipeline.cyclotomic_floor", {{"delta", enclosure(delta, policy)}});
    phi_rep.check(delta, fs.stats.delta_Phi, Relation::LE, policy);
    rep.merge(phi_rep.finish());
    std::vector<SamplePoint> pts(E.begin(), E.end());
    Real prod(1);
    for (auto& z : E) prod = prod * numeric::abs_value_at(fs.Q, z);
    Real nnu = pow(Real(n), prm.nu);
    Real goal = exp(-nnu * Real(Int(E.size())) / Real(4)) * pow(gcdbounds::delta_E(pts), Rat(-t));
    rec.emit("first_step", in, rep,
             {{"Q", polyz::to_json(fs.Q)}, {"stats", fs.stats.to_json(policy)},
              {"delta_Phi_vs_delta", phi_rep.to_json()},
              {"asymptotic_product", info_le(prod, goal, policy)}});
  }

  // which alternative a point of E realizes
  size_t at = 0;
  {
    nlohmann::json in = {{"Q", polyz::to_json(fs.Q)}, {"E", E.size()}, {"t", t}};
    Real nnu = pow(Real(n), prm.nu);
    Real q_goal = exp(-nnu / Real(8)), c_goal = exp(-nnu / Real(4 * t));
    std::optional<size_t> q_at, c_at;
    for (size_t k = 0; k < E.size() && !q_at; ++k) {
      if (numeric::certify(numeric::abs_value_at(fs.Q, E[k]), q_goal, Relation::LE, policy).verdict == Verdict::VERIFIED)
        q_at = k;
      if (c_at || E.size() < 2) continue;
      Real prod(1);
      for (size_t l = 0; l < E.size(); ++l)
        if (l != k) prod = prod * cyclo::detail::distance(E[l], E[k]);
      if (numeric::certify(prod, c_goal, Relation::LE, policy).verdict == Verdict::VERIFIED) c_at = k;
    }
    if (!q_at && !c_at) return rec.terminate("alternative", in, "Hypothesis", "no point of E realizes either inequality at this n");
    trace.branch = q_at ? Alternative::Q_SMALL : Alternative::CLUSTER;
    at = q_at ? *q_at : *c_at;
    rec.emit("alternative", in,
             {{"branch", to_string(trace.branch)}, {"i", E_exps[at]}, {"point", E[at].to_string()},
              {"value", enclosure(trace.branch == Alternative::Q_SMALL ? numeric::abs_value_at(fs.Q, E[at]) : Real(0), policy)}},
             "INFO");
  }
  const PolarPoint& z = E[at];
  long i_sum = 0;
  for (auto x : E_exps[at]) i_sum += x;
  Real nnu = pow(Real(n), prm.nu);

  if (trace.branch == Alternative::CLUSTER) {
    // S~(T) = prod (T^i' - T^i) evaluated at xi; formula bounds only
    nlohmann::json in = {{"i", E_exps[at]}, {"E", E.size()}, {"N_I", NI}};
    BoundReport rep("pipeline.cluster_form", in);
    long deg = 0;
    Real prod(1);
    for (size_t l = 0; l < E.size(); ++l) {
      if (l == at) continue;
      long s = 0;
      for (auto x : E_exps[l]) s += x;
      deg += std::max(s, i_sum);
      prod = prod * cyclo::detail::distance(E[l], z);
    }
    long e = static_cast<long>(E.size());
    rep.check(Real(deg), Real(Int(m * NI * e)), Relation::LE, policy);
    // H <= L(S~) <= 2^(|E|-1)
    rep.check(Real(Rat(e - 1)) * log(Real(2)), Real(e), Relation::LE, policy);
    rep.check(Real(0), prod, Relation::LT, policy);
    rep.check(prod, exp(-nnu / Real(4 * t)), Relation::LE, policy);
    rep.finish();
    rec.emit("auxiliary_form", in, rep, {{"degree_bound", deg}, {"log_height_bound", "(|E| - 1) log 2"}});
    return trace;
  }

  // Q small at z: gcd bounds for the torsion-free part, then linearization
  IntPolynomial P1 = gcdbounds::torsion_free_part(P);
  IntPolynomial Q1 = gcdbounds::gcd_power_family(P1, A);
  Rat lin_d;
  Real Y(1);
  {
    nlohmann::json in = {{"P1", polyz::to_json(P1)}, {"A", gcdbounds::exps_json(A)}, {"M", M}, {"n", n}};
    unsigned long l0 = std::max<unsigned long>(2, floor_of(Rat(2) / prm.mu).get_ui());
    std::optional<gcdbounds::GcdBoundParams> gp;
    for (unsigned long l = l0; 2 * l <= A.size() && !gp; ++l) {
      gcdbounds::GcdBoundParams cand{static_cast<unsigned long>(M), A, l, static_cast<unsigned long>(n)};
      try {
        cand.validate();
        gp = cand;
      } catch (const Error&) {
      }
    }
    BoundReport lift("pipeline.divisor_height", in);
    lift.check(log(Real(P1.height())), Real(n) + log(Real(P.height())), Relation::LE, policy);
    lift.finish();
    if (gp) {
      BoundReport rep = gcdbounds::gcd_bound_report(P1, *gp, policy);
      rep.merge(lift);
      long a_size = static_cast<long>(A.size());
      lin_d = Rat(6 * static_cast<long>(gp->l) * P1.degree()) / a_size;
      Y = exp(Real(Rat(gp->c()) / Rat(a_size * M)) * (Real(Rat(M * P1.degree())) + log(Real(P1.height()))));
      rec.emit("gcd_bounds", in, rep, {{"l", gp->l}, {"Q1", polyz::to_json(Q1)}, {"d", lin_d.get_str()}});
    } else {
      // the parameter window of the gcd bound is empty at this size; the
      // linearization only needs d >= deg Q1, Y >= H(Q1) and Y >= e^d
      lin_d = Rat(std::max(1L, static_cast<long>(Q1.degree())));
      Y = max(Real(Q1.height()), exp(Real(lin_d)));
      rec.emit("gcd_bounds", in,
               {{"applicable", false}, {"reason", "no l with 4 <= 2l <= |A| and n <= binom(|A|, l+2) / (2^(l+1) (l+1)!)"},
                {"Q1", polyz::to_json(Q1)}, {"d", lin_d.get_str()}, {"divisor_height", lift.to_json()}},
               numeric::to_string(lift.verdict));
    }
  }
  {
    nlohmann::json in = {{"P", polyz::to_json(P)}, {"A", gcdbounds::exps_json(A)}, {"t", t}};
    BoundReport rep = gcdbounds::multiplicity_identity(P, A, static_cast<unsigned long>(t));
    std::vector<IntPolynomial> ders;
    for (long j = 0; j < t; ++j)
      if (IntPolynomial dj = Q1.divided_derivative(static_cast<size_t>(j)); !dj.is_zero()) ders.push_back(dj);
    IntPolynomial G = ders.size() == 1 ? ders[0].primitive_part().normalized_sign() : polyz::gcd_set(ders).primitive_part();
    if (G != fs.Q.primitive_part().normalized_sign()) rep.fail_with("Q differs from gcd{Q1^[j] : j < t}");
    rec.emit("gcd_identity", in, rep, {{"gcd_of_derivatives", polyz::to_json(G)}});
  }
  gcdbounds::LinearizeResult lr;
  {
    nlohmann::json in = {{"Q1", polyz::to_json(Q1)}, {"t", t}, {"d", lin_d.get_str()}, {"point", z.to_string()}};
    try {
      lr = gcdbounds::linearize(Q1, static_cast<unsigned long>(t), lin_d, Y, {SamplePoint(z)}, exp(-nnu / Real(8)), policy);
    } catch (const Error& e) {
      if (!detail::terminating(e.kind())) throw;
      return rec.terminate("linearize", in, detail::kind_name(e.kind()), e.what());
    }
    rec.emit("linearize", in, lr.report, {{"S", polyz::to_json(lr.S)}, {"R", polyz::to_json(lr.R)}, {"k", lr.k}});
    if (lr.S.is_zero()) return rec.terminate("linearize", in, "Inconclusive", "no factor selected");
  }
  {
    // S~(T_1..T_m) = S(T_1^i_1 ... T_m^i_m): degree deg S (i_1 + ... + i_m),
    // same height, same value at xi
    nlohmann::json in = {{"S", polyz::to_json(lr.S)}, {"i", E_exps[at]}};
    BoundReport rep("pipeline.auxiliary_form", in);
    // S = R^k, so |S(xi)| = |R(xi)|^k needs only the precision of R(xi)
    Real val = pow(numeric::abs_value_at(lr.R, z), Rat(static_cast<long>(lr.k)));
    rep.check(Real(0), val, Relation::LT, policy);
    rep.check(val, pow(exp(-nnu / Real(8)), Rat(1) / Rat(6 * t)), Relation::LE, policy);
    rep.check(Real(Int(lr.S.degree() * i_sum)), Real(Int(lr.S.degree() * m * NI)), Relation::LE, policy);
    rep.finish();
    Rat eps3 = 3 * prm.epsilon;
    rec.emit("auxiliary_form", in, rep,
             {{"degree", lr.S.degree() * i_sum},
              {"log_height", enclosure(log(Real(lr.S.height())), policy)},
              {"asymptotic_degree", info_le(Real(Int(lr.S.degree() * i_sum)), pow(Real(n), 1 + prm.sigma - 2 * prm.mu - prm.tau + eps3), policy)},
              {"asymptotic_height", info_le(log(Real(lr.S.height())), pow(Real(n), prm.beta - 2 * prm.mu - prm.tau + eps3), policy)},
              {"asymptotic_value", info_le(val, exp(-pow(Real(n), prm.nu - prm.tau - prm.epsilon)), policy)}});
  }
  return trace;
}

} // namespace smallval::pipeline
