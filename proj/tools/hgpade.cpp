// hgpade: build, verify and measure hypergeometric Pade systems.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hgpade/arith.hpp"
#include "hgpade/ball.hpp"
#include "hgpade/criterion.hpp"
#include "hgpade/errors.hpp"
#include "hgpade/numerics.hpp"
#include "hgpade/pade.hpp"
#include "hgpade/serialize.hpp"
#include "hgpade/suite.hpp"
#include "hgpade/wronskian.hpp"

namespace {

using namespace hgpade;

enum ExitCode : int { kOk = 0, kUsage = 1, kHypothesis = 2, kTheory = 3, kVerdict = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string a, b, c0 = "auto", alphas, beta, z;
  unsigned n = 3;
  long truncation = 0;
  std::string place = "inf";
  std::string n_range;
  double epsilon = 0.1;
  unsigned bits = 512;
  std::string bound = "1e12";
  unsigned N = 200;
  std::string system_path;
  bool full_chain = false;
  std::string level = "desk";
  std::uint64_t seed = 20240601;
  std::string only;
  std::string out;
  std::string format = "json";
};

Rational rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

std::vector<Rational> rational_list_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

HypergeometricSpec spec_from_flags(const RunConfig& cfg) {
  if (cfg.a.empty()) throw UsageError("--a is required");
  auto a = rational_list_flag("a", cfg.a);
  auto b = rational_list_flag("b", cfg.b);
  std::optional<Rational> c0;
  if (cfg.c0 != "auto") c0 = rational_flag("c0", cfg.c0);
  return HypergeometricSpec::from_hypergeometric(std::move(a), std::move(b), c0);
}

std::vector<Rational> alphas_from_flags(const RunConfig& cfg) {
  if (cfg.alphas.empty()) throw UsageError("--alphas is required");
  return rational_list_flag("alphas", cfg.alphas);
}

Place place_from_flags(const RunConfig& cfg) {
  try {
    return Place::parse(cfg.place);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--place: ") + e.what());
  }
}

NRange range_from_flags(const RunConfig& cfg, NRange fallback) {
  if (cfg.n_range.empty()) return fallback;
  try {
    return NRange::parse(cfg.n_range);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n-range: ") + e.what());
  }
}

// "1e12", "10^12" or a plain integer
BigInt bound_from_flags(const RunConfig& cfg) {
  const std::string& t = cfg.bound;
  auto digits = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--bound: expected an integer, 'MeK' or '10^K', got '" + t + "'");
    }
    return s;
  };
  auto pos = t.find_first_of("eE");
  if (pos != std::string::npos) {
    BigInt mant(digits(t.substr(0, pos)));
    unsigned long k = std::stoul(digits(t.substr(pos + 1)));
    BigInt ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, k);
    return mant * ten;
  }
  pos = t.find('^');
  if (pos != std::string::npos) {
    BigInt base(digits(t.substr(0, pos)));
    unsigned long k = std::stoul(digits(t.substr(pos + 1)));
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), k);
    return out;
  }
  return BigInt(digits(t));
}

PadeSystem load_system(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--system: " + path + ": " + e.what());
  }
  try {
    return system_from_json(j);
  } catch (const HypothesisViolation&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("--system: " + path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& command, const Json& json, const std::string& text,
          const std::string& csv = {}) {
  std::string body;
  if (cfg.format == "json") {
    body = dump(json);
  } else if (cfg.format == "text") {
    body = text;
  } else if (cfg.format == "csv") {
    if (csv.empty()) throw UsageError("--format csv is not available for " + command);
    body = csv;
  } else {
    throw UsageError("--format: expected json, csv or text, got '" + cfg.format + "'");
  }
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    write_text(cfg.out, body);
  }
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

int cmd_build(const RunConfig& cfg) {
  auto spec = spec_from_flags(cfg);
  auto system = build_system(spec, alphas_from_flags(cfg), cfg.n, cfg.truncation);
  std::ostringstream text, csv;
  text << "r = " << system.r() << ", m = " << system.m() << ", n = " << system.n
       << ", truncation = " << system.truncation << "\n";
  for (std::size_t ell = 0; ell < system.P.size(); ++ell) {
    text << "deg P_" << ell << " = " << system.P[ell].degree() << "\n";
  }
  const auto flags = spec.flags();
  for (const auto& v : flags.violations) text << "warning: " << v << "\n";
  csv << "ell,k,coefficient\n";
  for (std::size_t ell = 0; ell < system.P.size(); ++ell) {
    const auto& c = system.P[ell].coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) csv << ell << "," << k << "," << to_string(c[k]) << "\n";
  }
  emit(cfg, "build", to_json(system), text.str(), csv.str());
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.system_path.empty()) throw UsageError("--system is required");
  auto system = load_system(cfg.system_path);
  auto report = verify_system(system);
  bool stored_match = true;
  for (std::size_t ell = 0; ell < system.P.size(); ++ell) {
    ++report.checks;
    if (!(build_P(system.spec, system.alphas, system.n, ell) == system.P[ell])) {
      stored_match = false;
      report.failures.push_back("P_" + std::to_string(ell) + " differs from the construction");
    }
    for (std::size_t i = 0; i < system.m(); ++i) {
      for (std::size_t s = 0; s < system.r(); ++s) {
        ++report.checks;
        const auto& stored = system.R[ell][i][s];
        LaurentTail fresh = remainder(system, ell, i, s, system.truncation);
        if (stored.truncation() != fresh.truncation() || !(stored - fresh).is_zero_to_truncation()) {
          stored_match = false;
          report.failures.push_back("stored R_{" + std::to_string(ell) + "," + std::to_string(i + 1) + "," +
                                    std::to_string(s) + "} differs from the recomputed remainder");
        }
      }
    }
  }
  report.passed = report.passed && stored_match;
  Json j{{"verification", to_json(report)},
         {"stored_remainders_match", stored_match},
         {"flags", to_json(system.spec.flags())}};
  std::ostringstream text;
  text << (report.passed ? "PASS" : "FAIL") << ": " << report.checks << " checks\n";
  for (const auto& f : report.failures) text << "  " << f << "\n";
  emit(cfg, "verify", j, text.str());
  if (!report.passed) {
    for (const auto& f : report.failures) std::cerr << "hgpade: " << f << "\n";
    return kVerdict;
  }
  return kOk;
}

int cmd_wronskian(const RunConfig& cfg) {
  PadeSystem system = cfg.system_path.empty()
                          ? build_system(spec_from_flags(cfg), alphas_from_flags(cfg), cfg.n, cfg.truncation)
                          : load_system(cfg.system_path);
  system.spec.require_all_flags();
  WronskianReport rep;
  if (cfg.full_chain) {
    rep = certify_nonvanishing(system);
  } else {
    rep.flags = system.spec.flags();
    rep.r = system.r();
    rep.m = system.m();
    rep.n = system.n;
    RationalPoly delta = delta_polynomial(system);
    rep.delta_z_degree = delta.degree();
    rep.delta = delta.coeff(0);
    rep.theta = theta_det(system);
    rep.leading_coeff_Prm = leading_coefficient_Prm(system);
    rep.a0s = a0s_values(system.spec, system.n);
    rep.route_delta_theta = rep.delta_z_degree == 0 && rep.delta == rep.leading_coeff_Prm * rep.theta;
    const Rational sign = system.rm() % 2 == 0 ? Rational(1) : Rational(-1);
    rep.route_delta_theta_stated_sign = rep.delta_z_degree == 0 && rep.delta == sign * rep.leading_coeff_Prm * rep.theta;
    if (rep.delta_z_degree != 0) rep.violations.push_back("Delta(z) has positive degree in z");
    if (rep.delta == 0) rep.violations.push_back("Delta = 0");
    if (!rep.route_delta_theta) rep.violations.push_back("Delta != lc(P_rm) Theta");
    rep.certified_nonzero = rep.violations.empty();
  }
  Json j = to_json(rep);
  j["full_chain"] = cfg.full_chain;
  std::ostringstream text;
  text << "Delta = " << to_string(rep.delta) << " (z-degree " << rep.delta_z_degree << ")\n"
       << "Theta = " << to_string(rep.theta) << "\n"
       << "certified nonzero: " << (rep.certified_nonzero ? "yes" : "no") << "\n";
  for (const auto& v : rep.violations) text << "violation: " << v << "\n";
  emit(cfg, "wronskian", j, text.str());
  if (!rep.certified_nonzero || !rep.violations.empty()) {
    for (const auto& v : rep.violations) std::cerr << "hgpade: theory violation: " << v << "\n";
    return kTheory;
  }
  return kOk;
}

int cmd_criterion(const RunConfig& cfg) {
  auto spec = spec_from_flags(cfg);
  auto alphas = alphas_from_flags(cfg);
  if (cfg.beta.empty()) throw UsageError("--beta is required");
  const Rational beta = rational_flag("beta", cfg.beta);
  const Place v0 = place_from_flags(cfg);
  const NRange range = range_from_flags(cfg, NRange{});
  validate_alphas(alphas);
  SystemCache cache(spec, alphas);
  MeasureReport rep = compute_measure(cache, beta, v0, cfg.epsilon, range);
  std::ostringstream text, csv;
  text << "A_emp = " << fmt(rep.A_emp) << ", U_emp = " << fmt(rep.U_emp) << ", V_emp = " << fmt(rep.V_emp) << "\n"
       << "mu_eps = " << fmt(rep.mu_eps) << ", log C_eps = " << fmt(rep.log_C_eps) << " at epsilon = "
       << fmt(rep.epsilon) << "\n"
       << "verdict: " << (rep.verdict ? "satisfied" : "not satisfied") << "\n";
  csv << "n,neg_log_R,log_coeffs,budget\n";
  csv.precision(17);
  for (const auto& s : rep.samples) {
    csv << s.n << "," << s.neg_log_R << "," << s.log_coeffs << "," << s.budget << "\n";
  }
  emit(cfg, "criterion", to_json(rep), text.str(), csv.str());
  if (!rep.verdict) {
    std::cerr << "hgpade: criterion not satisfied: V_emp = " << fmt(rep.V_emp) << " <= epsilon = " << fmt(rep.epsilon)
              << "\n";
    return kVerdict;
  }
  return kOk;
}

int cmd_min_beta(const RunConfig& cfg) {
  auto spec = spec_from_flags(cfg);
  auto alphas = alphas_from_flags(cfg);
  const Place v0 = place_from_flags(cfg);
  if (!v0.is_archimedean()) throw UsageError("--place: min-beta searches integers at the archimedean place only");
  const NRange range = range_from_flags(cfg, NRange{4, 12});
  const BigInt bound = bound_from_flags(cfg);
  validate_alphas(alphas);
  SystemCache cache(spec, alphas);
  auto beta = min_beta(cache, v0, bound, range);
  Json j{{"bound", to_string(bound)}, {"n_range", range.to_string()}, {"place", v0.to_string()}};
  std::ostringstream text;
  if (beta) {
    MeasureReport rep = compute_measure(cache, Rational(*beta), v0, 0.0, range, false);
    j["beta"] = to_string(*beta);
    j["V_emp"] = real(rep.V_emp);
    text << "min beta = " << to_string(*beta) << " (V_emp = " << fmt(rep.V_emp) << ")\n";
  } else {
    j["beta"] = nullptr;
    j["V_emp"] = nullptr;
    text << "no beta <= " << to_string(bound) << " with V_emp > 0\n";
  }
  emit(cfg, "min-beta", j, text.str());
  if (!beta) {
    std::cerr << "hgpade: criterion not satisfied for any beta <= " << to_string(bound) << "\n";
    return kVerdict;
  }
  return kOk;
}

int cmd_eval(const RunConfig& cfg) {
  auto a = rational_list_flag("a", cfg.a);
  auto b = rational_list_flag("b", cfg.b);
  if (cfg.z.empty()) throw UsageError("--z is required");
  const Rational z = rational_flag("z", cfg.z);
  if (cfg.bits < 16) throw UsageError("--bits must be at least 16");
  Ball v;
  try {
    v = eval_pFq(a, b, z, cfg.bits);
  } catch (const Divergence& e) {
    throw UsageError(std::string("--z: ") + e.what());
  }
  const int digits = static_cast<int>(std::ceil(cfg.bits * std::log10(2.0))) + 2;
  const double log2_err = v.log2_radius();
  const std::string value = v.mid_string(digits);
  Json j{{"a", to_json(a)}, {"b", to_json(b)}, {"z", to_json(z)}, {"bits", cfg.bits}, {"value", value}};
  std::ostringstream text;
  if (std::isinf(log2_err)) {
    j["log2_error_bound"] = nullptr;
    j["exact"] = true;
    text << value << " (exact)\n";
  } else {
    const long e = static_cast<long>(std::ceil(log2_err));
    j["log2_error_bound"] = e;
    j["exact"] = false;
    text << value << " +- 2^" << e << "\n";
  }
  emit(cfg, "eval", j, text.str());
  return kOk;
}

int cmd_profile(const RunConfig& cfg) {
  auto a = rational_flag("a", cfg.a);
  auto b = rational_flag("b", cfg.b);
  auto prof = D_n_profile(a, b, cfg.N);
  std::ostringstream text;
  text << "(1/N) log D_N = " << fmt(prof.log_rate) << " at N = " << prof.N << "\n";
  emit(cfg, "profile", to_json(prof), text.str(), profile_csv(prof));
  return kOk;
}

int cmd_suite(const RunConfig& cfg) {
  if (cfg.level != "desk") throw UsageError("--level: only 'desk' is available, got '" + cfg.level + "'");
  SuiteOptions opts;
  opts.seed = cfg.seed;
  if (!cfg.only.empty()) {
    std::stringstream ss(cfg.only);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int id = 0;
      try {
        id = std::stoi(item);
      } catch (const std::exception&) {
        throw UsageError("--only: expected criterion numbers, got '" + item + "'");
      }
      if (id < 1 || id > kCriterionCount) throw UsageError("--only: no criterion " + item);
      opts.only.push_back(id);
    }
  }
  auto results = run_acceptance(opts, [](const SuiteResult& r) { std::cout << format_result(r) << std::endl; });
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back(Json{{"id", r.id},
                       {"title", r.title},
                       {"passed", r.passed},
                       {"message", r.message},
                       {"seconds", real(r.seconds)},
                       {"limit_seconds", real(r.limit_seconds)}});
  }
  if (!cfg.out.empty()) {
    write_text(cfg.out, dump(Json{{"level", cfg.level}, {"seed", cfg.seed}, {"results", std::move(arr)}}));
  }
  return all ? kOk : kVerdict;
}

// Config keys mirror long flag names; they are spliced in before the
// command-line flags so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (path.empty()) return rest;
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--config: " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("--config: " + path + " must hold a JSON object");
  std::string command;
  std::vector<std::string> flags;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      command = value.get<std::string>();
      continue;
    }
    std::string name = key;
    for (auto& ch : name) {
      if (ch == '_') ch = '-';
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back("--" + name);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& x : value) {
        if (!joined.empty()) joined += ",";
        joined += x.is_string() ? x.get<std::string>() : x.dump();
      }
      flags.push_back("--" + name);
      flags.push_back(joined);
    } else {
      flags.push_back("--" + name);
      flags.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  std::vector<std::string> out;
  std::size_t start = 0;
  if (!rest.empty() && rest[0].rfind("-", 0) != 0) {
    out.push_back(rest[0]);
    start = 1;
  } else if (!command.empty()) {
    out.push_back(command);
  }
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), rest.begin() + static_cast<long>(start), rest.end());
  return out;
}

void add_spec_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--a", cfg.a, "numerator parameters, comma separated rationals");
  cmd->add_option("--b", cfg.b, "denominator parameters, comma separated rationals");
  cmd->add_option("--c0", cfg.c0, "c_0 as num/den, or auto");
  cmd->add_option("--alphas", cfg.alphas, "distinct nonzero rationals, comma separated");
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "output file (stdout when absent)");
  cmd->add_option("--format", cfg.format, "json, csv or text");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Hypergeometric Pade approximants: construction, Wronskian certification and measures"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer("--config FILE reads a JSON object whose keys mirror the long flags (plus \"command\").\n"
             "Exit codes: 0 ok, 1 usage or parse error, 2 hypothesis violation, 3 theory violation,\n"
             "4 failed verdict.");

  auto* build = app.add_subcommand("build", "construct P_l, P_{l,i,s} and R_{l,i,s}");
  add_spec_flags(build, cfg);
  build->add_option("--n", cfg.n, "weight n")->check(CLI::PositiveNumber);
  build->add_option("--truncation", cfg.truncation, "stored remainder terms (0 for the default)");
  add_output_flags(build, cfg);

  auto* verify = app.add_subcommand("verify", "re-check a stored system");
  verify->add_option("--system", cfg.system_path, "system JSON from build")->required();
  add_output_flags(verify, cfg);

  auto* wr = app.add_subcommand("wronskian", "certify the determinant is a nonzero constant");
  wr->add_option("--system", cfg.system_path, "system JSON from build");
  add_spec_flags(wr, cfg);
  wr->add_option("--n", cfg.n, "weight n")->check(CLI::PositiveNumber);
  wr->add_flag("--full-chain", cfg.full_chain, "run the complete factorization chain");
  add_output_flags(wr, cfg);

  auto* crit = app.add_subcommand("criterion", "rates, V and the independence measure at one place");
  add_spec_flags(crit, cfg);
  crit->add_option("--beta", cfg.beta, "evaluation point beta");
  crit->add_option("--place", cfg.place, "inf or a prime");
  crit->add_option("--n-range", cfg.n_range, "lo..hi (default 4..16)");
  crit->add_option("--epsilon", cfg.epsilon, "epsilon > 0 for the measure");
  add_output_flags(crit, cfg);

  auto* mb = app.add_subcommand("min-beta", "smallest integer beta with V_emp > 0");
  add_spec_flags(mb, cfg);
  mb->add_option("--bound", cfg.bound, "search bound, e.g. 1e12");
  mb->add_option("--place", cfg.place, "inf");
  mb->add_option("--n-range", cfg.n_range, "lo..hi (default 4..12)");
  add_output_flags(mb, cfg);

  auto* ev = app.add_subcommand("eval", "evaluate pFq at a rational point with a certified error");
  ev->add_option("--a", cfg.a, "numerator parameters");
  ev->add_option("--b", cfg.b, "denominator parameters");
  ev->add_option("--z", cfg.z, "argument num/den");
  ev->add_option("--bits", cfg.bits, "target precision in bits");
  add_output_flags(ev, cfg);

  auto* prof = app.add_subcommand("profile", "denominator profile D_k of (a)_k/(b)_k");
  prof->add_option("--a", cfg.a, "a")->required();
  prof->add_option("--b", cfg.b, "b")->required();
  prof->add_option("--N", cfg.N, "last index");
  add_output_flags(prof, cfg);

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  suite->add_option("--level", cfg.level, "desk");
  suite->add_option("--seed", cfg.seed, "seed for randomized checks");
  suite->add_option("--only", cfg.only, "comma separated criterion numbers");
  suite->add_option("--out", cfg.out, "JSON results file");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "hgpade: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*build) return cmd_build(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*wr) return cmd_wronskian(cfg);
    if (*crit) return cmd_criterion(cfg);
    if (*mb) return cmd_min_beta(cfg);
    if (*ev) return cmd_eval(cfg);
    if (*prof) return cmd_profile(cfg);
    if (*suite) return cmd_suite(cfg);
  } catch (const HypothesisViolation& e) {
    std::cerr << "hgpade: hypothesis violation: " << e.what() << "\n";
    return kHypothesis;
  } catch (const TheoryViolation& e) {
    std::cerr << "hgpade: theory violation: " << e.what() << "\n";
    return kTheory;
  } catch (const CriterionNotSatisfied& e) {
    std::cerr << "hgpade: " << e.what() << "\n";
    return kVerdict;
  } catch (const std::exception& e) {
    std::cerr << "hgpade: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
