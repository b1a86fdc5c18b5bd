#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "smallval/auxpoly.hpp"
#include "smallval/campaign.hpp"
#include "smallval/gcdbounds.hpp"
#include "smallval/pipeline.hpp"

using namespace smallval;

namespace {

// Accepts "c0 c1 ... cd" or a JSON array of decimal strings.
polyz::IntPolynomial parse_poly(const std::string& s) {
  auto first = s.find_first_not_of(" \t\n");
  if (first != std::string::npos && s[first] == '[') {
    try {
      return polyz::from_json(nlohmann::json::parse(s));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::Config, std::string("bad polynomial JSON: ") + e.what());
    }
  }
  return polyz::IntPolynomial::from_text(s);
}

Rat parse_rat(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::Config, "bad rational: " + s);
  }
}

std::vector<numeric::PolarPoint> parse_points(const std::vector<std::string>& in) {
  std::vector<numeric::PolarPoint> out;
  for (auto& s : in) out.push_back(numeric::PolarPoint::parse(s));
  return out;
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) fail(ErrorKind::Config, "cannot write " + out);
  f << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Config, "cannot read " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, path + ": " + e.what());
  }
}

// Renders a campaign report (or a single suite or report list) as a table.
void render(const nlohmann::json& j, std::ostream& os) {
  auto row = [&](const std::string& id, long v, long i, long x) {
    os << std::left << std::setw(44) << id << std::right << std::setw(10) << v << std::setw(14) << i << std::setw(10) << x << "\n";
  };
  if (j.contains("seed")) os << "seed " << j["seed"] << (j.contains("timestamp") ? "  at " + j["timestamp"].get<std::string>() : "") << "\n";
  os << std::left << std::setw(44) << "claim" << std::right << std::setw(10) << "VERIFIED" << std::setw(14) << "INCONCLUSIVE"
     << std::setw(10) << "VIOLATED" << "\n";
  std::vector<std::string> notes;
  const nlohmann::json suites = j.contains("suites") ? j["suites"] : nlohmann::json::array({j});
  for (auto& s : suites) {
    if (!s.contains("counts")) continue;
    auto& c = s["counts"];
    row(s["claim_id"].get<std::string>(), c["VERIFIED"], c["INCONCLUSIVE"], c["VIOLATED"]);
    for (auto& r : s["reports"])
      if (r["verdict"] != "VERIFIED")
        notes.push_back(r["claim_id"].get<std::string>() + " " + r["verdict"].get<std::string>() + ": " +
                        (r.contains("note") ? r["note"].get<std::string>() : r["params"].dump()));
  }
  for (auto& n : notes) os << "  " << n << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of small value estimates"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  long precision = 128, max_precision = 16384;
  std::string out;
  auto precision_flags = [&](CLI::App* c) {
    c->add_option("--precision", precision, "initial working precision in bits")->check(CLI::Range(16, 1 << 24));
    c->add_option("--max-precision", max_precision, "precision cap in bits")->check(CLI::Range(16, 1 << 24));
    c->add_option("--out", out, "output path (default stdout)");
  };

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  long instances = 0;
  unsigned long max_order = 60;
  unsigned threads = 0;
  bool list = false, quiet = false;
  verify->add_option("--suite", suites, "claim id to run (repeatable; 'all' for every suite)");
  verify->add_option("--seed", seed, "campaign seed");
  verify->add_option("--instances", instances, "instances per randomized suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--max-order", max_order, "largest root-of-unity order in exhaustive suites")->check(CLI::Range(1, 1000));
  verify->add_option("--threads", threads, "worker threads (default: all cores)");
  verify->add_flag("--list", list, "list the claim ids and exit");
  verify->add_flag("--quiet", quiet, "no summary table on stderr");
  precision_flags(verify);

  // construct
  auto* construct = app.add_subcommand("construct", "build and certify a small-value polynomial");
  std::vector<std::string> xi_s;
  long n = 8;
  std::string sigma_s = "0", tau_s = "0", nu_s = "1", beta_s = "2";
  construct->add_option("--xi", xi_s, "point, e.g. 3/2, exp(1/3), zeta(1/5)*2 (repeatable)")->required();
  construct->add_option("--n", n, "degree bound")->check(CLI::PositiveNumber);
  construct->add_option("--sigma", sigma_s, "grid exponent");
  construct->add_option("--tau", tau_s, "derivative exponent");
  construct->add_option("--nu", nu_s, "smallness exponent");
  construct->add_option("--beta", beta_s, "height exponent");
  precision_flags(construct);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "step trace of the argument on one instance");
  std::string poly_s, instance, mu_s, eps_s;
  std::vector<std::string> pxi_s;
  long pn = 8;
  std::string psigma = "0", ptau = "0", pnu = "1", pbeta = "2";
  pipe->add_option("--instance", instance, "built-in instance: small_gcd, cluster or constructed");
  pipe->add_option("--poly", poly_s, "P as 'c0 c1 ... cd' or a JSON array");
  pipe->add_option("--xi", pxi_s, "point (repeatable)");
  pipe->add_option("--n", pn, "degree bound")->check(CLI::PositiveNumber);
  pipe->add_option("--sigma", psigma);
  pipe->add_option("--tau", ptau);
  pipe->add_option("--nu", pnu);
  pipe->add_option("--beta", pbeta);
  pipe->add_option("--mu", mu_s, "prime window exponent (default from m and sigma)");
  pipe->add_option("--epsilon", eps_s, "slack exponent (default from the other exponents)");
  precision_flags(pipe);

  // gcd
  auto* gcdc = app.add_subcommand("gcd", "gcd of P(T^a) over a in A, or of P^[j](T^a) for j < t");
  std::string gpoly;
  std::vector<unsigned long> A;
  unsigned long t = 1, M = 0, l = 2;
  gcdc->add_option("--poly", gpoly, "P as 'c0 c1 ... cd' or a JSON array")->required();
  gcdc->add_option("-A,--exponent", A, "exponent a (repeatable)")->required();
  gcdc->add_option("--t", t, "number of divided derivatives")->check(CLI::PositiveNumber);
  gcdc->add_option("--M", M, "also check the degree and height bounds for primes A in [M/2, M]");
  gcdc->add_option("--l", l, "l for the bound check");
  precision_flags(gcdc);

  // report
  auto* report = app.add_subcommand("report", "render a JSON report as a table");
  std::string in;
  report->add_option("input", in, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  numeric::PrecisionPolicy policy{precision, max_precision};
  try {
    if (precision > max_precision) fail(ErrorKind::Config, "--precision exceeds --max-precision");

    if (*verify) {
      if (list) {
        for (auto& s : campaign::registry())
          std::cout << std::left << std::setw(40) << s.id << " " << s.description << (s.fixed ? " [fixed]" : "") << "\n";
        return 0;
      }
      campaign::CampaignSpec spec;
      spec.suites = suites;
      spec.config.seed = seed;
      spec.config.instances = instances;
      spec.config.max_order = max_order;
      spec.config.policy = policy;
      spec.threads = threads;
      campaign::CampaignReport rep = campaign::run_campaign(spec);
      nlohmann::json j = rep.to_json();
      emit(j, out);
      if (!quiet) render(j, std::cerr);
      return rep.violated() ? 1 : 0;
    }

    if (*construct) {
      auxpoly::SmallValueParams prm;
      prm.n = n;
      prm.xi = parse_points(xi_s);
      prm.sigma = parse_rat(sigma_s);
      prm.tau = parse_rat(tau_s);
      prm.nu = parse_rat(nu_s);
      prm.beta = parse_rat(beta_s);
      auxpoly::ConstructResult res = auxpoly::construct_small_value_poly(prm, policy);
      nlohmann::json j = res.to_json();
      j["params"] = prm.to_json();
      emit(j, out);
      return res.report.violated() ? 1 : 0;
    }

    if (*pipe) {
      campaign::detail::PipelineCase c;
      if (!instance.empty()) {
        if (instance == "small_gcd")
          c = campaign::detail::small_gcd_case();
        else if (instance == "cluster")
          c = campaign::detail::cluster_case();
        else if (instance == "constructed")
          c = campaign::detail::constructed_case(policy);
        else
          fail(ErrorKind::Config, "unknown instance " + instance);
      } else {
        if (poly_s.empty() || pxi_s.empty()) fail(ErrorKind::Config, "need --instance, or --poly with --xi");
        c.P = parse_poly(poly_s);
        c.xi = parse_points(pxi_s);
        auto& p = c.prm;
        p.n = pn;
        p.m = static_cast<long>(c.xi.size());
        p.sigma = parse_rat(psigma);
        p.tau = parse_rat(ptau);
        p.nu = parse_rat(pnu);
        p.beta = parse_rat(pbeta);
        p.mu = mu_s.empty() ? pipeline::PipelineParams::default_mu(p.m, p.sigma) : parse_rat(mu_s);
        p.epsilon = eps_s.empty() ? pipeline::PipelineParams::default_epsilon(p.m, p.beta, p.sigma, p.tau, p.nu, p.mu) : parse_rat(eps_s);
      }
      pipeline::PipelineTrace tr = pipeline::run_pipeline(c.prm, c.xi, c.P, policy);
      nlohmann::json j = tr.to_json();
      j["params"] = c.prm.to_json();
      j["P"] = polyz::to_json(c.P);
      emit(j, out);
      return tr.violated() ? 1 : 0;
    }

    if (*gcdc) {
      polyz::IntPolynomial p = parse_poly(gpoly);
      polyz::IntPolynomial Q = t == 1 ? gcdbounds::gcd_power_family(p, A) : gcdbounds::gcd_derivative_family(p, A, t);
      nlohmann::json j = {{"P", polyz::to_json(p)}, {"A", A}, {"t", t}, {"Q", polyz::to_json(Q)}, {"Q_text", Q.pretty()}};
      int code = 0;
      if (M > 0) {
        gcdbounds::GcdBoundParams prm{M, A, l, static_cast<unsigned long>(p.degree())};
        BoundReport rep = gcdbounds::gcd_bound_report(p, prm, policy);
        j["bound"] = rep.to_json();
        code = rep.violated() ? 1 : 0;
      }
      emit(j, out);
      return code;
    }

    if (*report) {
      render(read_json(in), std::cout);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Precondition ? 2 : 1;
  }
  return 0;
}
