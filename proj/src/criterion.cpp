#include "hgpade/criterion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hgpade/errors.hpp"
#include "hgpade/numerics.hpp"
#include "hgpade/parallel.hpp"

namespace hgpade {

namespace {

double log_of(const BigInt& x) { return log_abs(x); }

}  // namespace

double HeightData::at(const Place& v) const {
  for (const auto& [place, value] : local) {
    if (place == v) return value;
  }
  return 0.0;
}

HeightData heights(const std::vector<Rational>& vec) {
  if (std::all_of(vec.begin(), vec.end(), [](const Rational& x) { return x == 0; })) {
    throw std::invalid_argument("height of the zero vector");
  }
  HeightData out;
  out.vec = vec;
  Rational mx = 1;
  std::set<BigInt> primes;
  for (const auto& x : vec) {
    mx = std::max(mx, Rational(abs(x)));
    if (x == 0) continue;
    for (const auto& [q, e] : factor(abs(x.get_num()))) primes.insert(q);
    for (const auto& [q, e] : factor(x.get_den())) primes.insert(q);
  }
  out.local.emplace_back(Place::archimedean(), log_abs(mx));
  for (const auto& q : primes) {
    long worst = 0;
    for (const auto& x : vec) {
      if (x != 0) worst = std::min(worst, valuation(x, q));
    }
    double hv = static_cast<double>(-worst) * log_of(q);
    out.local.emplace_back(Place::prime(q.get_ui()), hv);
  }
  for (const auto& [v, hv] : out.local) out.h += hv;
  return out;
}

NRange NRange::parse(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos) throw std::invalid_argument("n-range must look like lo..hi, got '" + text + "'");
  auto num = [&](std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("n-range must look like lo..hi, got '" + text + "'");
    }
    return v;
  };
  NRange r{num(std::string_view(text).substr(0, pos)), num(std::string_view(text).substr(pos + 2))};
  if (r.lo < 1 || r.hi < r.lo + 3) throw std::invalid_argument("n-range needs lo >= 1 and at least 4 values");
  return r;
}

std::string NRange::to_string() const { return std::to_string(lo) + ".." + std::to_string(hi); }

std::vector<unsigned> NRange::values() const {
  std::vector<unsigned> out;
  for (unsigned n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

RateFit fit_rate(const std::vector<unsigned>& n, const std::vector<double>& y) {
  if (n.size() != y.size() || n.size() < 2) throw std::invalid_argument("rate fit needs two or more samples");
  RateFit fit;
  fit.n = n;
  fit.y = y;
  const std::size_t half = n.size() / 2;
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    double w = k >= half ? 2.0 : 1.0, x = n[k];
    sw += w;
    sx += w * x;
    sy += w * y[k];
    sxx += w * x * x;
    sxy += w * x * y[k];
  }
  const double det = sw * sxx - sx * sx;
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / sw;
  for (std::size_t k = 0; k < n.size(); ++k) {
    double pred = fit.slope * n[k] + fit.intercept;
    double scale = std::max(std::fabs(y[k]), 1e-300);
    fit.max_relative_residual = std::max(fit.max_relative_residual, std::fabs(y[k] - pred) / scale);
  }
  return fit;
}

SystemCache::SystemCache(HypergeometricSpec spec, std::vector<Rational> alphas)
    : spec_(std::move(spec)), alphas_(std::move(alphas)) {}

const PadeSystem& SystemCache::get(unsigned n) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = systems_.find(n); it != systems_.end()) return *it->second;
  }
  auto built = std::make_shared<PadeSystem>(build_system(spec_, alphas_, n));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = systems_.emplace(n, std::move(built));
  return *it->second;
}

PlaceSample sample_place(const PadeSystem& system, const Rational& beta, const Place& v0) {
  PlaceSample out;
  out.n = system.n;
  const std::size_t r = system.r(), m = system.m();
  std::vector<Rational> values;
  for (std::size_t ell = 0; ell <= system.rm(); ++ell) {
    values.push_back(system.P[ell](beta));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < r; ++s) values.push_back(system.Pis[ell][i][s](beta));
    }
  }
  double log_max = -std::numeric_limits<double>::infinity();
  for (const auto& x : values) {
    if (x != 0) log_max = std::max(log_max, log_abs(x));
  }
  if (log_max == -std::numeric_limits<double>::infinity()) {
    throw TheoryViolation("every coefficient vanishes at beta = " + to_string(beta));
  }
  // den(coefficients) den(beta)^deg clears every value, whatever beta is
  BigInt D = 1;
  long deg = 0;
  auto absorb = [&](const RationalPoly& poly) {
    if (poly.is_zero()) return;
    deg = std::max(deg, poly.degree());
    for (const auto& c : poly.coeffs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
  };
  for (std::size_t ell = 0; ell <= system.rm(); ++ell) {
    absorb(system.P[ell]);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < r; ++s) absorb(system.Pis[ell][i][s]);
    }
  }
  BigInt den_beta_pow;
  mpz_pow_ui(den_beta_pow.get_mpz_t(), beta.get_den_mpz_t(), static_cast<unsigned long>(deg));
  D *= den_beta_pow;
  if (!v0.is_archimedean()) {
    const BigInt pz(static_cast<unsigned long>(v0.p()));
    mpz_remove(D.get_mpz_t(), D.get_mpz_t(), pz.get_mpz_t());
  }
  const double finite = log_of(D);
  double neg_log_R = std::numeric_limits<double>::infinity();
  if (v0.is_archimedean()) {
    for (std::size_t ell = 0; ell <= system.rm(); ++ell) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t s = 0; s < r; ++s) {
          RemainderValue R = remainder_value(system, ell, i, s, beta, 24);
          neg_log_R = std::min(neg_log_R, -R.log_abs());
        }
      }
    }
    out.log_coeffs = log_max;
    out.budget = finite;
  } else {
    const double lp = std::log(static_cast<double>(v0.p()));
    for (std::size_t ell = 0; ell <= system.rm(); ++ell) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t s = 0; s < r; ++s) {
          long v = remainder_valuation(system, ell, i, s, beta, v0.p());
          neg_log_R = std::min(neg_log_R, static_cast<double>(v) * lp);
        }
      }
    }
    long worst = std::numeric_limits<long>::max();
    for (const auto& x : values) {
      if (x != 0) worst = std::min(worst, valuation(x, v0.p()));
    }
    out.log_coeffs = static_cast<double>(-worst) * lp;
    out.budget = log_max + finite;
  }
  out.neg_log_R = neg_log_R;
  return out;
}

std::vector<PlaceSample> sample_range(SystemCache& cache, const Rational& beta, const NRange& range,
                                      const Place& v0) {
  auto ns = range.values();
  std::vector<PlaceSample> out(ns.size());
  // one system per worker keeps peak memory flat; larger n first balances load
  std::vector<std::size_t> order(ns.size());
  for (std::size_t k = 0; k < ns.size(); ++k) order[k] = ns.size() - 1 - k;
  parallel_for(order.size(), [&](std::size_t k) {
    std::size_t idx = order[k];
    out[idx] = sample_place(cache.get(ns[idx]), beta, v0);
  });
  return out;
}

namespace {

RateFit fit_member(const std::vector<PlaceSample>& samples, double PlaceSample::*member) {
  std::vector<unsigned> n;
  std::vector<double> y;
  for (const auto& s : samples) {
    n.push_back(s.n);
    y.push_back(s.*member);
  }
  return fit_rate(n, y);
}

}  // namespace

EmpiricalRates empirical_rates(const std::vector<PlaceSample>& samples) {
  EmpiricalRates out;
  out.A = fit_member(samples, &PlaceSample::neg_log_R);
  out.U = fit_member(samples, &PlaceSample::log_coeffs);
  out.budget = fit_member(samples, &PlaceSample::budget);
  out.V = out.A.slope - out.budget.slope;
  return out;
}

RateFit growth_rate_P(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                      const NRange& range, const Place& v) {
  SystemCache cache(spec, alphas);
  return empirical_rates(sample_range(cache, beta, range, v)).U;
}

RateFit decay_rate_R(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                     const NRange& range, const Place& v0) {
  SystemCache cache(spec, alphas);
  return empirical_rates(sample_range(cache, beta, range, v0)).A;
}

ClosedForm closed_form_constants(const HypergeometricSpec& spec, const std::vector<Rational>& alphas,
                                 const Rational& beta, const Place& v0, unsigned n_hi) {
  ClosedForm cf;
  const double r = static_cast<double>(spec.r());
  const double rm = r * static_cast<double>(alphas.size());
  cf.kappa = rm * std::log(2.0) + r * (std::log(rm + 1) + rm * std::log((rm + 1) / rm));
  std::vector<Rational> ab = alphas;
  ab.push_back(beta);
  const HeightData h = heights(ab);
  double log_alpha = -std::numeric_limits<double>::infinity();
  for (const auto& a : alphas) log_alpha = std::max(log_alpha, log_abs_at_place(a, v0));
  const double log_beta = log_abs_at_place(beta, v0);
  const double h_v0 = h.at(v0);
  double sum_terms = 0;
  for (std::size_t j = 0; j < spec.r(); ++j) {
    const Rational& eta = spec.eta()[j];
    const Rational& zeta = spec.zeta()[j];
    const auto de = eta.get_den().get_ui(), dz = zeta.get_den().get_ui();
    sum_terms += log_mu(eta) + 2 * log_mu(zeta) +
                 static_cast<double>(dz) * static_cast<double>(de) /
                     (static_cast<double>(totient(dz)) * static_cast<double>(totient(de)));
  }
  cf.V = log_beta - rm * h.h - (rm + 1) * log_alpha + rm * h_v0 - cf.kappa - sum_terms;
  if (v0.is_archimedean()) {
    cf.c_v0 = cf.kappa;
    cf.A = log_beta - (rm + 1) * log_alpha - cf.c_v0;
    cf.U = rm * h_v0 + cf.c_v0;
  } else {
    const std::uint64_t p = v0.p();
    const double lp = std::log(static_cast<double>(p));
    const BigInt pz(static_cast<unsigned long>(p));
    for (const auto& z : spec.zeta()) {
      if (mpz_divisible_p(z.get_den_mpz_t(), pz.get_mpz_t())) {
        cf.c_v0 += static_cast<double>(p) / static_cast<double>(p - 1) * lp;
      }
    }
    cf.profile_N = static_cast<unsigned>(rm) * n_hi;
    auto [D, Dp] = D_c_profiles(spec.eta(), spec.zeta(), cf.profile_N);
    const double per_n = rm / static_cast<double>(cf.profile_N);
    const double vD = static_cast<double>(valuation(D.values.back(), p)) * lp;
    const double vDp = static_cast<double>(valuation(Dp.values.back(), p)) * lp;
    cf.A = log_beta - (rm + 1) * log_alpha - cf.c_v0 + per_n * (vD + vDp);
    cf.U = rm * h_v0 + cf.c_v0 + per_n * vD;
  }
  return cf;
}

double criterion_V(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                   const Place& v0, CriterionMode mode, const NRange& range) {
  if (mode == CriterionMode::closed_form) return closed_form_constants(spec, alphas, beta, v0, range.hi).V;
  SystemCache cache(spec, alphas);
  try {
    return empirical_rates(sample_range(cache, beta, range, v0)).V;
  } catch (const Divergence&) {
    return -std::numeric_limits<double>::infinity();
  }
}

namespace {

void fill_measure(MeasureReport& rep) {
  const double gap = rep.V_emp - rep.epsilon;
  const double AU = rep.A_emp + rep.U_emp;
  if (gap > 0) {
    rep.mu_eps = AU / gap;
    rep.log_C_eps = -(std::log(2.0) / gap + 1) * AU;
    rep.C_eps = std::exp(rep.log_C_eps);
  } else {
    rep.mu_eps = rep.C_eps = rep.log_C_eps = std::numeric_limits<double>::quiet_NaN();
  }
  rep.verdict = rep.V_emp > 0 && gap > 0;
}

}  // namespace

MeasureReport compute_measure(SystemCache& cache, const Rational& beta, const Place& v0, double epsilon,
                              const NRange& range, bool check_specialization) {
  MeasureReport rep{.spec = cache.spec(), .alphas = cache.alphas(), .beta = beta, .v0 = v0, .n_range = range};
  rep.epsilon = epsilon;
  rep.samples = sample_range(cache, beta, range, v0);
  EmpiricalRates rates = empirical_rates(rep.samples);
  rep.A_fit = rates.A;
  rep.U_fit = rates.U;
  rep.budget_fit = rates.budget;
  rep.A_emp = rates.A.slope;
  rep.U_emp = rates.U.slope;
  rep.V_emp = rates.V;
  const std::size_t half = rep.samples.size() / 2;
  std::vector<PlaceSample> low(rep.samples.begin(), rep.samples.begin() + static_cast<long>(half));
  std::vector<PlaceSample> high(rep.samples.begin() + static_cast<long>(half), rep.samples.end());
  if (low.size() >= 2 && high.size() >= 2) {
    rep.V_emp_low_window = empirical_rates(low).V;
    rep.V_emp_high_window = empirical_rates(high).V;
  }
  ClosedForm cf = closed_form_constants(cache.spec(), cache.alphas(), beta, v0, range.hi);
  rep.A_cf = cf.A;
  rep.U_cf = cf.U;
  rep.V_cf = cf.V;
  rep.kappa_cf = cf.kappa;
  rep.profile_N = cf.profile_N;
  if (check_specialization && cache.spec().is_hypergeometric()) {
    const auto& s = cache.spec();
    SystemCache roots(HypergeometricSpec::from_roots(s.eta(), s.zeta(), s.c0()), cache.alphas());
    rep.specialization_agrees = empirical_rates(sample_range(roots, beta, range, v0)).V == rep.V_emp;
  }
  fill_measure(rep);
  return rep;
}

MeasureReport measure(SystemCache& cache, const Rational& beta, const Place& v0, double epsilon,
                      const NRange& range) {
  MeasureReport rep = compute_measure(cache, beta, v0, epsilon, range);
  if (!(rep.V_emp - epsilon > 0)) {
    throw CriterionNotSatisfied("criterion not satisfied: V = " + std::to_string(rep.V_emp) +
                                " <= epsilon = " + std::to_string(epsilon));
  }
  return rep;
}

MeasureReport measure(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                      const Place& v0, double epsilon, const NRange& range) {
  SystemCache cache(spec, alphas);
  return measure(cache, beta, v0, epsilon, range);
}

bool measure_identities_hold(const MeasureReport& rep) {
  const double gap = rep.V_emp - rep.epsilon;
  if (!(gap > 0)) return false;
  const double AU = rep.A_emp + rep.U_emp;
  const double tol = 8 * std::numeric_limits<double>::epsilon();
  const bool mu_ok = std::fabs(rep.mu_eps * gap - AU) <= tol * std::fabs(AU);
  const double logC = -(std::log(2.0) / gap + 1) * AU;
  const bool c_ok = std::fabs(rep.log_C_eps - logC) <= tol * std::fabs(logC) &&
                    (rep.C_eps == std::exp(logC));
  return mu_ok && c_ok;
}

std::optional<BigInt> min_beta(SystemCache& cache, const Place& v0, const BigInt& search_bound,
                               const NRange& range) {
  if (!v0.is_archimedean()) {
    throw std::invalid_argument("min-beta searches integers, which are p-adically too small; use place inf");
  }
  Rational max_alpha = 0;
  for (const auto& a : cache.alphas()) max_alpha = std::max(max_alpha, Rational(abs(a)));
  BigInt start = max_alpha.get_num() / max_alpha.get_den() + 1;
  auto V = [&](const BigInt& b) {
    try {
      return empirical_rates(sample_range(cache, Rational(b), range, v0)).V;
    } catch (const Divergence&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  if (start > search_bound) return std::nullopt;
  if (V(start) > 0) return start;
  BigInt lo = start, hi = start * 2;
  while (true) {
    if (hi > search_bound) {
      if (V(search_bound) > 0) {
        hi = search_bound;
        break;
      }
      return std::nullopt;
    }
    if (V(hi) > 0) break;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (V(mid) > 0) hi = mid; else lo = mid;
  }
  return hi;
}

PlaceBudgetCheck place_budget_check(const HypergeometricSpec& spec, unsigned N) {
  PlaceBudgetCheck out;
  out.N = N;
  auto [D, Dp] = D_c_profiles(spec.eta(), spec.zeta(), N);
  out.measured = (log_abs(D.values.back()) + log_abs(Dp.values.back())) / static_cast<double>(N);
  for (std::size_t j = 0; j < spec.r(); ++j) {
    const Rational& eta = spec.eta()[j];
    const Rational& zeta = spec.zeta()[j];
    out.measured += log_mu(zeta);
    const auto de = eta.get_den().get_ui(), dz = zeta.get_den().get_ui();
    out.budget += log_mu(eta) + 2 * log_mu(zeta) +
                  static_cast<double>(dz) * static_cast<double>(de) /
                      (static_cast<double>(totient(dz)) * static_cast<double>(totient(de)));
  }
  out.within = out.measured <= 1.05 * out.budget;
  return out;
}

}  // namespace hgpade
