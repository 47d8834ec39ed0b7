#include <gtest/gtest.h>

#include "hgpade/errors.hpp"
#include "hgpade/operators.hpp"
#include "hgpade/pade.hpp"

using namespace hgpade;

namespace {

HypergeometricSpec canonical() {
  return HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4)}, {Rational(1, 2)});
}

HypergeometricSpec spec_r3() {
  return HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4), Rational(1, 5)},
                                                 {Rational(1, 2), Rational(2, 3)});
}

RationalPoly apply_chain(const HypergeometricSpec& spec, RationalPoly p, unsigned n, std::size_t k,
                         std::size_t s) {
  for (std::size_t j = 1; j + k <= n - 1; ++j) p = apply_H_theta(spec.B(), p, Rational(static_cast<long>(j)));
  for (std::size_t j = 1; j <= k; ++j) p = apply_H_theta(spec.A(), p, Rational(-static_cast<long>(j)));
  for (std::size_t w = 1; w <= s; ++w) p = DiagonalOperator::theta_plus(spec.gamma(w))(p);
  return p;
}

Rational factorial(unsigned n) {
  Rational f = 1;
  for (unsigned j = 2; j <= n; ++j) f *= j;
  return f;
}

}  // namespace

TEST(Pade, ContractOnSmallInstances) {
  struct Case {
    HypergeometricSpec spec;
    std::vector<Rational> alphas;
    unsigned n;
  };
  std::vector<Case> cases{{canonical(), {Rational(1)}, 1},
                          {canonical(), {Rational(1)}, 3},
                          {canonical(), {Rational(1), Rational(2)}, 2},
                          {spec_r3(), {Rational(2), Rational(3)}, 1}};
  for (const auto& c : cases) {
    auto sys = build_system(c.spec, c.alphas, c.n);
    const std::size_t rm = sys.rm();
    ASSERT_EQ(sys.P.size(), rm + 1);
    for (std::size_t ell = 0; ell <= rm; ++ell) {
      EXPECT_EQ(sys.P[ell].degree(), static_cast<long>(rm * c.n + ell));
      for (std::size_t i = 0; i < sys.m(); ++i) {
        for (std::size_t s = 0; s < sys.r(); ++s) {
          EXPECT_TRUE(sys.R[ell][i][s].ord_at_least(c.n + 1)) << ell << i << s;
        }
      }
    }
    auto rep = verify_system(sys);
    EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(Pade, RemainderCoefficientsArePsiImages) {
  auto sys = build_system(canonical(), {Rational(1), Rational(2)}, 2);
  for (std::size_t ell = 0; ell <= sys.rm(); ++ell) {
    for (std::size_t i = 0; i < sys.m(); ++i) {
      for (std::size_t s = 0; s < sys.r(); ++s) {
        const auto& R = sys.R[ell][i][s];
        for (long k = 0; k + 1 < R.truncation(); ++k) {
          EXPECT_EQ(R.coeff(k + 1), psi(sys.spec, sys.alphas, i, s, sys.P[ell].shifted(static_cast<std::size_t>(k))));
        }
      }
    }
  }
}

TEST(Pade, KeyVanishingIsDivisibleByEachFactor) {
  for (const auto& spec : {canonical(), spec_r3()}) {
    const std::vector<Rational> alphas{Rational(1), Rational(-2)};
    const unsigned n = 3;
    for (std::size_t ell = 0; ell <= spec.r() * alphas.size(); ++ell) {
      RationalPoly seed = pade_seed(spec.r(), alphas, n, ell);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = 0; s < spec.r(); ++s) {
          RationalPoly q = apply_chain(spec, seed.shifted(k), n, k, s);
          for (const auto& a : alphas) {
            EXPECT_TRUE(q.divisible_by(RationalPoly::linear_power(a, 1))) << "ell=" << ell << " k=" << k << " s=" << s;
          }
        }
      }
    }
  }
}

TEST(Pade, ShiftedFormOfTkP) {
  // (n-1)!^r t^k P_l = T_c A(theta-1)..A(theta-k) B(theta+1)..B(theta+n-1-k) (t^(l+k) H)
  auto spec = canonical();
  const std::vector<Rational> alphas{Rational(1), Rational(3)};
  const unsigned n = 3;
  Rational scale = 1;
  for (std::size_t j = 0; j < spec.r(); ++j) scale *= factorial(n - 1);
  for (std::size_t ell = 0; ell <= 4; ++ell) {
    RationalPoly P = build_P(spec, alphas, n, ell);
    for (std::size_t k = 0; k < n; ++k) {
      RationalPoly rhs = T_c(spec, apply_chain(spec, pade_seed(spec.r(), alphas, n, ell).shifted(k), n, k, 0),
                             Direction::forward);
      EXPECT_EQ(P.shifted(k) * scale, rhs) << "ell=" << ell << " k=" << k;
    }
  }
}

TEST(Pade, NullspaceOracleContainsConstruction) {
  auto sys = build_system(canonical(), {Rational(1), Rational(2)}, 2);
  std::vector<LaurentTail> f;
  std::vector<unsigned> weights;
  for (std::size_t i = 0; i < sys.m(); ++i) {
    for (std::size_t s = 0; s < sys.r(); ++s) {
      f.push_back(expand_F_s(sys.spec, sys.alphas[i], s, 40));
      weights.push_back(sys.n);
    }
  }
  for (std::size_t ell = 0; ell <= sys.rm(); ++ell) {
    auto kernel = solve_pade_nullspace(f, weights, sys.rm() * sys.n + ell);
    EXPECT_TRUE(in_solution_space(kernel, sys.P[ell]));
    RationalPoly bad = sys.P[ell] + RationalPoly::monomial(1, 0);
    EXPECT_FALSE(in_solution_space(kernel, bad));
  }
}

TEST(Pade, FaultInjectionNamesTheMember) {
  auto sys = build_system(canonical(), {Rational(1)}, 3);
  sys.P[1].set_coeff(2, sys.P[1].coeff(2) + Rational(1, 7));
  auto rep = verify_system(sys);
  EXPECT_FALSE(rep.passed);
  ASSERT_FALSE(rep.failures.empty());
  EXPECT_NE(rep.failures.front().find("(1,"), std::string::npos) << rep.failures.front();
}

TEST(Pade, DegreeFaultIsReported) {
  auto sys = build_system(canonical(), {Rational(1)}, 2);
  sys.P[0].set_coeff(static_cast<std::size_t>(sys.P[0].degree()) + 1, Rational(1));
  auto rep = verify_system(sys);
  EXPECT_FALSE(rep.passed);
  bool degree_named = false;
  for (const auto& f : rep.failures) degree_named = degree_named || f.find("deg") != std::string::npos;
  EXPECT_TRUE(degree_named);
}

TEST(Pade, BoundaryAndHypotheses) {
  auto spec = canonical();
  EXPECT_THROW(build_system(spec, {Rational(1)}, 0), HypothesisViolation);
  EXPECT_THROW(build_system(spec, {Rational(0)}, 1), HypothesisViolation);
  EXPECT_THROW(build_system(spec, {Rational(1), Rational(1)}, 1), HypothesisViolation);
  // n = 1: empty B-product, (n-1)!^r = 1
  auto P = build_P(spec, std::vector<Rational>{Rational(1)}, 1, 0);
  EXPECT_EQ(P, T_c(spec, pade_seed(2, std::vector<Rational>{Rational(1)}, 1, 0), Direction::forward));
}

TEST(Pade, TwoRemainderRoutesAgree) {
  auto sys = build_system(spec_r3(), {Rational(1, 2), Rational(2)}, 1);
  for (std::size_t ell = 0; ell <= sys.rm(); ++ell) {
    for (std::size_t i = 0; i < sys.m(); ++i) {
      for (std::size_t s = 0; s < sys.r(); ++s) {
        auto a = remainder(sys, ell, i, s, 20, RemainderRoute::functional);
        auto b = remainder(sys, ell, i, s, 20, RemainderRoute::series);
        EXPECT_TRUE((a - b).is_zero_to_truncation());
      }
    }
  }
}
