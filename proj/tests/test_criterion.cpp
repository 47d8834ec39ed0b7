#include <cmath>

#include <gtest/gtest.h>

#include "hgpade/criterion.hpp"
#include "hgpade/errors.hpp"

using namespace hgpade;

namespace {

HypergeometricSpec canonical() {
  return HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4)}, {Rational(1, 2)});
}

const std::vector<Rational> kAlphas{Rational(1), Rational(2)};

}  // namespace

TEST(Heights, Examples) {
  EXPECT_DOUBLE_EQ(heights({Rational(1)}).h, 0.0);
  EXPECT_NEAR(heights({Rational(1), Rational(2)}).h, std::log(2.0), 1e-15);
  auto h = heights({Rational(1, 2), Rational(3)});
  EXPECT_NEAR(h.h, std::log(3.0) + std::log(2.0), 1e-15);
  EXPECT_NEAR(h.at(Place::archimedean()), std::log(3.0), 1e-15);
  EXPECT_NEAR(h.at(Place::prime(2)), std::log(2.0), 1e-15);
  EXPECT_THROW(heights({Rational(0), Rational(0)}), std::invalid_argument);
}

TEST(Heights, Decomposition) {
  auto h = heights({Rational(9, 10), Rational(-5, 12), Rational(7)});
  double sum = 0;
  for (const auto& [v, hv] : h.local) {
    EXPECT_GE(hv, 0.0);
    sum += hv;
  }
  EXPECT_NEAR(sum, h.h, 1e-12);
  EXPECT_NEAR(heights({Rational(1), Rational(-17), Rational(4)}).h, std::log(17.0), 1e-14);
}

TEST(NRange, Parse) {
  auto r = NRange::parse("4..16");
  EXPECT_EQ(r.lo, 4u);
  EXPECT_EQ(r.values().size(), 13u);
  EXPECT_EQ(r.to_string(), "4..16");
  EXPECT_THROW(NRange::parse("4..6"), std::invalid_argument);
  EXPECT_THROW(NRange::parse("4-16"), std::invalid_argument);
}

TEST(FitRate, ExactLine) {
  std::vector<unsigned> n{4, 5, 6, 7, 8};
  std::vector<double> y;
  for (unsigned k : n) y.push_back(2.5 * k - 1.0);
  auto fit = fit_rate(n, y);
  EXPECT_NEAR(fit.slope, 2.5, 1e-12);
  EXPECT_NEAR(fit.intercept, -1.0, 1e-12);
  EXPECT_LT(fit.max_relative_residual, 1e-12);
}

TEST(Criterion, SlopeOneInLogBeta) {
  const NRange range{4, 9};
  auto spec = canonical();
  double v1 = criterion_V(spec, kAlphas, Rational(1000000), Place::archimedean(), CriterionMode::empirical, range);
  double v2 = criterion_V(spec, kAlphas, Rational(2000000), Place::archimedean(), CriterionMode::empirical, range);
  EXPECT_NEAR((v2 - v1) / std::log(2.0), 1.0, 0.02);
}

TEST(Criterion, BetaOneCannotCertify) {
  double v = criterion_V(canonical(), kAlphas, Rational(1), Place::archimedean(), CriterionMode::empirical, {4, 8});
  EXPECT_LT(v, 0);
}

TEST(Criterion, DecayRateDoublesByLogTwo) {
  const NRange range{4, 9};
  auto a1 = decay_rate_R(canonical(), {Rational(1)}, Rational(1000000), range, Place::archimedean());
  auto a2 = decay_rate_R(canonical(), {Rational(1)}, Rational(2000000), range, Place::archimedean());
  EXPECT_LT(a1.max_relative_residual, 0.02);
  EXPECT_NEAR((a2.slope - a1.slope) / std::log(2.0), 1.0, 0.05);
}

TEST(Criterion, DecayRatePreconditions) {
  EXPECT_THROW(decay_rate_R(canonical(), {Rational(2)}, Rational(2), {4, 7}, Place::archimedean()), Divergence);
}

TEST(Measure, ShapeAndIdentities) {
  SystemCache cache(canonical(), kAlphas);
  auto rep = compute_measure(cache, Rational(1000000), Place::archimedean(), 0.1, {4, 10});
  ASSERT_TRUE(rep.verdict);
  EXPECT_GT(rep.mu_eps, 1.0);
  EXPECT_TRUE(measure_identities_hold(rep));
  EXPECT_NEAR(rep.mu_eps * (rep.V_emp - rep.epsilon), rep.A_emp + rep.U_emp, 1e-9 * rep.mu_eps);
  ASSERT_TRUE(rep.specialization_agrees.has_value());
  EXPECT_TRUE(*rep.specialization_agrees);
  EXPECT_TRUE(rep.A_cf.has_value());
  EXPECT_EQ(rep.samples.size(), 7u);

  // epsilon close to V sends mu up
  auto near = compute_measure(cache, Rational(1000000), Place::archimedean(), rep.V_emp * 0.99, {4, 10}, false);
  EXPECT_GT(near.mu_eps, 50 * rep.mu_eps);
}

TEST(Measure, NotSatisfiedThrows) {
  SystemCache cache(canonical(), kAlphas);
  EXPECT_THROW(measure(cache, Rational(3), Place::archimedean(), 0.1, {4, 8}), CriterionNotSatisfied);
  auto rep = compute_measure(cache, Rational(3), Place::archimedean(), 0.1, {4, 8}, false);
  EXPECT_FALSE(rep.verdict);
  EXPECT_TRUE(std::isnan(rep.mu_eps));
}

TEST(Measure, PadicPlaceRuns) {
  SystemCache cache(canonical(), kAlphas);
  auto rep = compute_measure(cache, Rational(1, 1024), Place::prime(2), 0.1, {4, 8}, false);
  EXPECT_TRUE(std::isfinite(rep.A_emp));
  EXPECT_GT(rep.A_emp, 0);
  EXPECT_TRUE(std::isfinite(rep.V_emp));
}

TEST(ClosedForm, KappaValue) {
  auto cf = closed_form_constants(canonical(), kAlphas, Rational(1000000), Place::archimedean(), 12);
  const double rm = 4, r = 2;
  const double kappa = rm * std::log(2.0) + r * (std::log(rm + 1) + rm * std::log((rm + 1) / rm));
  EXPECT_NEAR(cf.kappa, kappa, 1e-12);
  EXPECT_TRUE(std::isfinite(cf.A) && std::isfinite(cf.U) && std::isfinite(cf.V));
  auto cf2 = closed_form_constants(canonical(), kAlphas, Rational(2000000), Place::archimedean(), 12);
  EXPECT_NEAR(cf2.V - cf.V, std::log(2.0), 1e-9);
}

TEST(PlaceBudget, WithinGlobalBudget) {
  auto check = place_budget_check(canonical(), 200);
  EXPECT_TRUE(check.within);
  EXPECT_GT(check.measured, 0);
}
