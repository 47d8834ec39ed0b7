#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "hgpade/arith.hpp"

using namespace hgpade;

TEST(ParseRational, CanonicalForms) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4/2"), Rational(-2));
  EXPECT_EQ(parse_rational("17"), Rational(17));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  EXPECT_EQ(to_string(parse_rational("6/3")), "2");
}

TEST(ParseRational, RejectsMalformed) {
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
}

TEST(ParseRational, Lists) {
  auto v = parse_rational_list("1/3,1/4,2");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[1], Rational(1, 4));
  EXPECT_TRUE(parse_rational_list("").empty());
  EXPECT_THROW(parse_rational_list("1/3,,2"), std::invalid_argument);
}

TEST(Integers, Classification) {
  EXPECT_TRUE(is_nonpositive_integer(Rational(0)));
  EXPECT_TRUE(is_nonpositive_integer(Rational(-3)));
  EXPECT_FALSE(is_nonpositive_integer(Rational(-1, 2)));
  EXPECT_TRUE(is_positive_integer(parse_rational("4/2")));
  EXPECT_FALSE(is_positive_integer(Rational(0)));
}

TEST(Pochhammer, AgainstProducts) {
  EXPECT_EQ(pochhammer(Rational(1, 3), 0), Rational(1));
  EXPECT_EQ(pochhammer(Rational(1, 3), 3), Rational(1, 3) * Rational(4, 3) * Rational(7, 3));
  EXPECT_EQ(pochhammer(Rational(1), 5), Rational(120));
  EXPECT_EQ(pochhammer(Rational(-2), 4), Rational(0));
}

TEST(Valuation, SmallCases) {
  EXPECT_EQ(valuation(Rational(12), 2), 2);
  EXPECT_EQ(valuation(Rational(3, 8), 2), -3);
  EXPECT_EQ(valuation(Rational(5, 7), 3), 0);
  EXPECT_THROW(valuation(BigInt(0), 2), std::invalid_argument);
}

TEST(Places, ProductFormula) {
  for (Rational x : {Rational(12, 35), Rational(-9, 16), Rational(1024, 81)}) {
    double sum = log_abs_at_place(x, Place::archimedean());
    for (std::uint64_t p : {2, 3, 5, 7}) sum += log_abs_at_place(x, Place::prime(p));
    EXPECT_NEAR(sum, 0.0, 1e-12) << to_string(x);
  }
  EXPECT_DOUBLE_EQ(abs_at_place(Rational(1, 2), Place::prime(2)), 2.0);
  EXPECT_THROW(Place::prime(4), std::invalid_argument);
  EXPECT_EQ(Place::parse("inf"), Place::archimedean());
  EXPECT_EQ(Place::parse("7").p(), 7u);
}

TEST(Factor, Primes) {
  auto f = factor(BigInt(360));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].first, 2);
  EXPECT_EQ(f[0].second, 3u);
  EXPECT_EQ(f[2].first, 5);
  EXPECT_TRUE(is_prime_u64(1000000007ULL));
  EXPECT_FALSE(is_prime_u64(1));
  EXPECT_EQ(totient(12), 4u);
  EXPECT_EQ(totient(7), 6u);
}

TEST(DenOfSet, Lcm) {
  std::vector<Rational> v{Rational(1, 4), Rational(5, 6), Rational(3)};
  EXPECT_EQ(den_of_set(v), 12);
}

TEST(Mu, SquarefreeDenominators) {
  EXPECT_NEAR(log_mu(Rational(1, 3)), 1.5 * std::log(3.0), 1e-12);
  EXPECT_NEAR(log_mu(Rational(5, 6)), 2 * std::log(2.0) + 1.5 * std::log(3.0), 1e-12);
  EXPECT_EQ(log_mu(Rational(4)), 0.0);
}

// brute force: den{(a)_j/(b)_j : j <= k}
static BigInt brute_D(const Rational& a, const Rational& b, unsigned k) {
  BigInt d = 1;
  for (unsigned j = 0; j <= k; ++j) {
    Rational q = pochhammer(a, j) / pochhammer(b, j);
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  }
  return d;
}

TEST(DenominatorProfile, MatchesBruteForce) {
  for (auto [a, b] : {std::pair{Rational(1, 3), Rational(1, 2)}, std::pair{Rational(2, 5), Rational(3, 7)}}) {
    auto prof = D_n_profile(a, b, 30);
    ASSERT_EQ(prof.values.size(), 31u);
    for (unsigned k = 0; k <= 30; ++k) EXPECT_EQ(prof.values[k], brute_D(a, b, k)) << k;
    EXPECT_NEAR(prof.log_rate, log_abs(prof.values[30]) / 30.0, 1e-12);
  }
}

TEST(DenominatorProfile, SquarefreeGrowthBound) {
  const Rational a(2, 5), b(2, 3);
  auto prof = D_n_profile(a, b, 200);
  EXPECT_LE(prof.log_rate, log_mu(a) + 3.0 / 2.0 + 0.05);
}

// den(a) = 4: the growth exceeds log mu(a) + den/phi but stays under
// log den(a) + sum_q log q/(q-1)
TEST(DenominatorProfile, PrimePowerDenominatorConstant) {
  const Rational a(1, 4), b(2, 3);
  auto prof = D_n_profile(a, b, 200);
  EXPECT_GT(prof.log_rate, log_mu(a) + 1.5 + 0.05);
  EXPECT_LE(prof.log_rate, std::log(4.0) + std::log(2.0) + 1.5);
}

TEST(MuN, DividesPochhammerDenominators) {
  std::vector<Rational> zetas{Rational(1, 2), Rational(2, 3), Rational(1, 5)};
  auto sel = select_mu_rounding(zetas, 12);
  EXPECT_TRUE(sel.rounding == MuRounding::floor ? sel.floor_holds : sel.ceil_holds);
  for (const auto& z : zetas) {
    for (unsigned n = 1; n <= 12; ++n) {
      Rational q = pochhammer(z + 1, n);
      for (unsigned j = 2; j <= n; ++j) q /= j;
      BigInt mu = mu_n(z, n, sel.rounding);
      EXPECT_TRUE(mpz_divisible_p(mu.get_mpz_t(), q.get_den_mpz_t())) << to_string(z) << " n=" << n;
    }
  }
}

TEST(LogAbs, HugeIntegers) {
  BigInt x;
  mpz_ui_pow_ui(x.get_mpz_t(), 3, 5000);
  EXPECT_NEAR(log_abs(x), 5000 * std::log(3.0), 1e-9 * 5000);
  EXPECT_TRUE(std::isinf(log_abs(BigInt(0))));
}
