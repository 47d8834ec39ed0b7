#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hgpade/arith.hpp"
#include "hgpade/pade.hpp"
#include "hgpade/spec.hpp"

namespace hgpade {

struct HeightData {
  std::vector<Rational> vec;
  /// (place, log max(1, |x_i|_v)) for the archimedean place and every prime
  /// dividing a numerator or denominator.
  std::vector<std::pair<Place, double>> local;
  double h = 0;
  double at(const Place& v) const;
};

/// Throws std::invalid_argument on the zero vector.
HeightData heights(const std::vector<Rational>& vec);

struct NRange {
  unsigned lo = 4, hi = 16;
  /// "lo..hi"
  static NRange parse(const std::string& text);
  std::string to_string() const;
  std::vector<unsigned> values() const;
};

struct RateFit {
  double slope = 0;
  double intercept = 0;
  double max_relative_residual = 0;
  std::vector<unsigned> n;
  std::vector<double> y;  // samples fitted against n
};

/// Weighted least squares y = slope n + intercept, larger-n half weighted 2.
RateFit fit_rate(const std::vector<unsigned>& n, const std::vector<double>& y);

/// Per-n measurements at one place.
struct PlaceSample {
  unsigned n = 0;
  double neg_log_R = 0;   // -log max |R_{l,i,s}(beta)|_v0
  double log_coeffs = 0;  // log max |x_j|_v0 over P_l(beta), P_{l,i,s}(beta)
  double budget = 0;      // bound on sum over v != v0 of log max |x_j|_v
};

/// Caches systems per n; thread safe.
class SystemCache {
 public:
  SystemCache(HypergeometricSpec spec, std::vector<Rational> alphas);
  const PadeSystem& get(unsigned n);
  const HypergeometricSpec& spec() const { return spec_; }
  const std::vector<Rational>& alphas() const { return alphas_; }

 private:
  HypergeometricSpec spec_;
  std::vector<Rational> alphas_;
  std::mutex mutex_;
  std::map<unsigned, std::shared_ptr<PadeSystem>> systems_;
};

/// Throws Divergence when |alpha_i/beta|_v0 >= 1 for some i.
PlaceSample sample_place(const PadeSystem& system, const Rational& beta, const Place& v0);
std::vector<PlaceSample> sample_range(SystemCache& cache, const Rational& beta, const NRange& range,
                                      const Place& v0);

/// U_emp: rate of log max |coefficient|_v.
RateFit growth_rate_P(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                      const NRange& range, const Place& v);
/// A_emp: rate of -log max |R|_v0.
RateFit decay_rate_R(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                     const NRange& range, const Place& v0);

/// Reconstructed constants; the archimedean constant is
/// rm log 2 + r (log(rm+1) + rm log((rm+1)/rm)) (best-effort).
struct ClosedForm {
  double kappa = 0;
  double c_v0 = 0;
  double A = 0, U = 0, V = 0;
  unsigned profile_N = 0;  // finite N used in place of the limsup terms
};
ClosedForm closed_form_constants(const HypergeometricSpec& spec, const std::vector<Rational>& alphas,
                                 const Rational& beta, const Place& v0, unsigned n_hi);

enum class CriterionMode { empirical, closed_form };

struct EmpiricalRates {
  RateFit A, U, budget;
  double V = 0;
};
EmpiricalRates empirical_rates(const std::vector<PlaceSample>& samples);

/// V at v0. Empirical mode returns -inf when the series do not converge at v0.
double criterion_V(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                   const Place& v0, CriterionMode mode, const NRange& range = {});

struct MeasureReport {
  HypergeometricSpec spec;
  std::vector<Rational> alphas{};
  Rational beta{};
  Place v0 = Place::archimedean();
  NRange n_range{};
  double A_emp = 0, U_emp = 0, V_emp = 0;
  RateFit A_fit{}, U_fit{}, budget_fit{};
  std::optional<double> A_cf{}, U_cf{}, V_cf{};
  double kappa_cf = 0;
  unsigned profile_N = 0;
  double V_emp_low_window = 0, V_emp_high_window = 0;
  double mu_eps = 0;
  double C_eps = 0;
  double log_C_eps = 0;
  double epsilon = 0;
  bool verdict = false;
  std::optional<bool> specialization_agrees{};
  std::vector<PlaceSample> samples{};
};

/// Full report; mu_eps and C_eps are NaN when V_emp <= epsilon.
MeasureReport compute_measure(SystemCache& cache, const Rational& beta, const Place& v0, double epsilon,
                              const NRange& range, bool check_specialization = true);
/// Throws CriterionNotSatisfied when V_emp <= epsilon.
MeasureReport measure(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, const Rational& beta,
                      const Place& v0, double epsilon, const NRange& range = {});
MeasureReport measure(SystemCache& cache, const Rational& beta, const Place& v0, double epsilon,
                      const NRange& range);

/// Checks of mu_eps (V - eps) = A + U and log C_eps = -(log 2/(V - eps) + 1)(A + U).
bool measure_identities_hold(const MeasureReport& report);

/// Smallest integer beta <= search_bound with V_emp(beta) > 0 (archimedean).
std::optional<BigInt> min_beta(SystemCache& cache, const Place& v0, const BigInt& search_bound,
                               const NRange& range = {4, 12});

/// (1/N) log(D_N D'_N) + sum_j log mu(zeta_j) against
/// sum_j (log mu(eta_j) + 2 log mu(zeta_j) + den den / (phi phi)).
struct PlaceBudgetCheck {
  unsigned N = 0;
  double measured = 0;
  double budget = 0;
  bool within = false;  // measured <= 1.05 budget
};
PlaceBudgetCheck place_budget_check(const HypergeometricSpec& spec, unsigned N = 200);

}  // namespace hgpade
