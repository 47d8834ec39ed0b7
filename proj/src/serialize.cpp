#include "hgpade/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hgpade {

Json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const RationalPoly& p) { return to_json(p.coeffs()); }

Json to_json(const LaurentTail& t) {
  return Json{{"low", t.low()}, {"coeffs", to_json(t.coeffs())}, {"truncation", t.truncation()}};
}

Json to_json(const HypothesisFlags& f) {
  return Json{{"AB", f.ab},
              {"a_not_positive_integer", f.a_not_positive_integer},
              {"a_shift_b_not_positive_integer", f.a_shift_b_not_positive_integer},
              {"eta_zeta_not_positive_integer", f.eta_zeta_not_positive_integer},
              {"all", f.all()},
              {"violations", f.violations}};
}

Json to_json(const HypergeometricSpec& spec) {
  Json out{{"eta", to_json(spec.eta())},
           {"zeta", to_json(spec.zeta())},
           {"c0", to_json(spec.c0())},
           {"hypergeometric", spec.is_hypergeometric()}};
  if (spec.is_hypergeometric()) {
    out["a"] = to_json(spec.a());
    out["b"] = to_json(spec.b());
  }
  return out;
}

Json to_json(const PadeSystem& system) {
  Json P = Json::array(), Pis = Json::array(), R = Json::array();
  for (std::size_t ell = 0; ell < system.P.size(); ++ell) {
    P.push_back(to_json(system.P[ell]));
    Json pi = Json::array(), ri = Json::array();
    for (std::size_t i = 0; i < system.Pis[ell].size(); ++i) {
      Json ps = Json::array(), rs = Json::array();
      for (std::size_t s = 0; s < system.Pis[ell][i].size(); ++s) {
        ps.push_back(to_json(system.Pis[ell][i][s]));
        rs.push_back(to_json(system.R[ell][i][s]));
      }
      pi.push_back(std::move(ps));
      ri.push_back(std::move(rs));
    }
    Pis.push_back(std::move(pi));
    R.push_back(std::move(ri));
  }
  return Json{{"spec", to_json(system.spec)},
              {"alphas", to_json(system.alphas)},
              {"n", system.n},
              {"truncation", system.truncation},
              {"P", std::move(P)},
              {"P_is", std::move(Pis)},
              {"R", std::move(R)}};
}

Json to_json(const VerificationReport& report) {
  return Json{{"passed", report.passed}, {"failures", report.failures}, {"checks", report.checks}};
}

Json to_json(const WronskianReport& w) {
  auto nums = [](const auto& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x);
    return out;
  };
  return Json{{"flags", to_json(w.flags)},
              {"r", w.r},
              {"m", w.m},
              {"n", w.n},
              {"delta_z_degree", w.delta_z_degree},
              {"delta", to_json(w.delta)},
              {"theta", to_json(w.theta)},
              {"leading_coeff_P_rm", to_json(w.leading_coeff_Prm)},
              {"a0s", to_json(w.a0s)},
              {"psi_P_hat", to_json(w.psi_P_hat)},
              {"chain_u", nums(w.chain_u)},
              {"c_um_chain", to_json(w.c_um_chain)},
              {"reduction_factors", to_json(w.reduction_factors)},
              {"final_dets", to_json(w.final_dets)},
              {"final_E", to_json(w.final_E)},
              {"exponent_e", w.exponent_e},
              {"route_delta_theta", w.route_delta_theta},
              {"route_delta_theta_stated_sign", w.route_delta_theta_stated_sign},
              {"route_theta_psi", w.route_theta_psi},
              {"reduction_holds", w.reduction_holds},
              {"final_det_identity_holds", w.final_det_identity_holds},
              {"certified_nonzero", w.certified_nonzero},
              {"violations", w.violations},
              {"notes", w.notes}};
}

Json to_json(const IdentityReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back(Json{{"l", e.ell},
                           {"i", e.i + 1},
                           {"s", e.s},
                           {"log2_residual_bound", real(e.log2_residual)},
                           {"log2_abs_R", real(e.log2_R)},
                           {"passed", e.passed}});
  }
  return Json{{"bits", report.bits}, {"passed", report.passed}, {"entries", std::move(entries)}};
}

Json to_json(const RateFit& fit) {
  Json y = Json::array();
  for (double v : fit.y) y.push_back(real(v));
  return Json{{"slope", real(fit.slope)},
              {"intercept", real(fit.intercept)},
              {"max_relative_residual", real(fit.max_relative_residual)},
              {"n", fit.n},
              {"samples", std::move(y)}};
}

Json to_json(const MeasureReport& rep) {
  auto opt = [](const std::optional<double>& x) { return x ? real(*x) : Json(nullptr); };
  Json out{{"spec", to_json(rep.spec)},
           {"alphas", to_json(rep.alphas)},
           {"beta", to_json(rep.beta)},
           {"place", rep.v0.to_string()},
           {"n_range", rep.n_range.to_string()},
           {"A_emp", real(rep.A_emp)},
           {"U_emp", real(rep.U_emp)},
           {"V_emp", real(rep.V_emp)},
           {"A_fit", to_json(rep.A_fit)},
           {"U_fit", to_json(rep.U_fit)},
           {"budget_fit", to_json(rep.budget_fit)},
           {"V_emp_low_window", real(rep.V_emp_low_window)},
           {"V_emp_high_window", real(rep.V_emp_high_window)},
           {"closed_form",
            Json{{"label", "best-effort"},
                 {"A", opt(rep.A_cf)},
                 {"U", opt(rep.U_cf)},
                 {"V", opt(rep.V_cf)},
                 {"kappa", real(rep.kappa_cf)},
                 {"profile_N", rep.profile_N}}},
           {"mu_eps", real(rep.mu_eps)},
           {"C_eps", real(rep.C_eps)},
           {"log_C_eps", real(rep.log_C_eps)},
           {"epsilon", real(rep.epsilon)},
           {"verdict", rep.verdict},
           {"specialization_agrees", rep.specialization_agrees ? Json(*rep.specialization_agrees) : Json(nullptr)}};
  Json samples = Json::array();
  for (const auto& smp : rep.samples) {
    samples.push_back(Json{{"n", smp.n},
                           {"neg_log_R", real(smp.neg_log_R)},
                           {"log_coeffs", real(smp.log_coeffs)},
                           {"budget", real(smp.budget)}});
  }
  out["samples"] = std::move(samples);
  return out;
}

Json to_json(const HeightData& h) {
  Json local = Json::object();
  for (const auto& [v, hv] : h.local) local[v.to_string()] = real(hv);
  return Json{{"vector", to_json(h.vec)}, {"local", std::move(local)}, {"h", real(h.h)}};
}

Json to_json(const DenominatorProfile& profile) {
  Json values = Json::array();
  for (const auto& d : profile.values) values.push_back(to_string(d));
  return Json{{"N", profile.N}, {"values", std::move(values)}, {"log_rate", real(profile.log_rate)}};
}

Json to_json(const PlaceBudgetCheck& check) {
  return Json{{"N", check.N}, {"measured", real(check.measured)}, {"budget", real(check.budget)},
              {"within", check.within}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

RationalPoly poly_from_json(const Json& j) { return RationalPoly(rationals_from_json(j)); }

LaurentTail tail_from_json(const Json& j) {
  return LaurentTail(j.at("low").get<long>(), rationals_from_json(j.at("coeffs")), j.at("truncation").get<long>());
}

HypergeometricSpec spec_from_json(const Json& j) {
  if (j.value("hypergeometric", false)) {
    return HypergeometricSpec::from_hypergeometric(rationals_from_json(j.at("a")), rationals_from_json(j.at("b")));
  }
  return HypergeometricSpec::from_roots(rationals_from_json(j.at("eta")), rationals_from_json(j.at("zeta")),
                                        rational_from_json(j.at("c0")));
}

PadeSystem system_from_json(const Json& j) {
  try {
    PadeSystem sys{spec_from_json(j.at("spec"))};
    sys.alphas = rationals_from_json(j.at("alphas"));
    sys.n = j.at("n").get<unsigned>();
    sys.truncation = j.at("truncation").get<long>();
    for (const auto& p : j.at("P")) sys.P.push_back(poly_from_json(p));
    const auto& Pis = j.at("P_is");
    const auto& R = j.at("R");
    if (Pis.size() != sys.P.size() || R.size() != sys.P.size()) {
      throw std::invalid_argument("P, P_is and R differ in length");
    }
    for (std::size_t ell = 0; ell < Pis.size(); ++ell) {
      sys.Pis.emplace_back();
      sys.R.emplace_back();
      for (std::size_t i = 0; i < Pis[ell].size(); ++i) {
        sys.Pis[ell].emplace_back();
        sys.R[ell].emplace_back();
        for (std::size_t s = 0; s < Pis[ell][i].size(); ++s) {
          sys.Pis[ell][i].push_back(poly_from_json(Pis[ell][i][s]));
          sys.R[ell][i].push_back(tail_from_json(R.at(ell).at(i).at(s)));
        }
      }
    }
    if (sys.Pis.size() != sys.P.size()) throw std::invalid_argument("P_is has the wrong shape");
    for (const auto& row : sys.Pis) {
      if (row.size() != sys.m()) throw std::invalid_argument("P_is has the wrong shape");
      for (const auto& col : row) {
        if (col.size() != sys.r()) throw std::invalid_argument("P_is has the wrong shape");
      }
    }
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed system file: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string profile_csv(const DenominatorProfile& profile) {
  std::ostringstream out;
  out << "k,D_k,log_D_k\n";
  for (std::size_t k = 0; k < profile.values.size(); ++k) {
    Json lg = real(log_abs(profile.values[k]));
    out << k << ',' << to_string(profile.values[k]) << ',' << lg.dump() << '\n';
  }
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hgpade
