#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "hgpade/errors.hpp"
#include "hgpade/functionals.hpp"
#include "hgpade/laurent.hpp"
#include "hgpade/linalg.hpp"
#include "hgpade/operators.hpp"
#include "hgpade/spec.hpp"

using namespace hgpade;

namespace {

HypergeometricSpec canonical() {
  return HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4)}, {Rational(1, 2)});
}

std::vector<HypergeometricSpec> three_specs() {
  return {canonical(),
          HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4), Rational(1, 5)},
                                                  {Rational(1, 2), Rational(2, 3)}),
          HypergeometricSpec::from_hypergeometric({Rational(2, 7)}, {})};
}

// determinant by permutation expansion
Rational leibniz_det(const RationalMatrix& M) {
  const std::size_t n = M.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    }
    Rational term = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= M[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  RationalPoly p{Rational(1), Rational(2)};  // 1 + 2x
  RationalPoly q{Rational(-1), Rational(0), Rational(1, 2)};
  EXPECT_EQ((p * q).degree(), 3);
  EXPECT_EQ((p * q)(Rational(3)), p(Rational(3)) * q(Rational(3)));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(RationalPoly().degree(), RationalPoly::kNegInfDegree);
  EXPECT_EQ(p.pow(3), p * p * p);
  EXPECT_EQ(p.shifted(2), p * RationalPoly::monomial(1, 2));
}

TEST(Polynomial, DivmodAndFactors) {
  RationalPoly f = RationalPoly::linear_power(Rational(2), 3) * RationalPoly{Rational(1), Rational(1)};
  auto [quot, rem] = f.divmod(RationalPoly::linear_power(Rational(2), 2));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(quot, (RationalPoly{Rational(-2), Rational(1)} * RationalPoly{Rational(1), Rational(1)}));
  EXPECT_FALSE(f.divisible_by(RationalPoly::linear_power(Rational(3), 1)));
  std::vector<Rational> shifts{Rational(1, 2), Rational(-3)};
  RationalPoly g = RationalPoly::from_shifts(shifts);
  EXPECT_EQ(g(Rational(3)), 0);
  EXPECT_EQ(g(Rational(-1, 2)), 0);
}

TEST(Laurent, ProductAndOrder) {
  // (z) * (1/z + 1/z^2) = 1 + 1/z
  LaurentTail a = LaurentTail::from_polynomial(RationalPoly::monomial(1, 1), 6);
  LaurentTail b(1, {Rational(1), Rational(1)}, 6);
  LaurentTail c = a * b;
  EXPECT_EQ(c.coeff(0), 1);
  EXPECT_EQ(c.coeff(1), 1);
  EXPECT_EQ(c.coeff(2), 0);
  EXPECT_EQ(b.ord(), 1);
  EXPECT_TRUE(b.ord_at_least(1));
  EXPECT_FALSE(b.ord_at_least(2));
  EXPECT_THROW(b.coeff(6), InsufficientPrecision);
  EXPECT_EQ(c.polynomial_part(), RationalPoly::constant(1));
}

TEST(Operators, ThetaEigenvalues) {
  auto th = DiagonalOperator::theta_plus(Rational(1, 2));
  RationalPoly p{Rational(1), Rational(1), Rational(1)};
  EXPECT_EQ(th(p), (RationalPoly{Rational(1, 2), Rational(3, 2), Rational(5, 2)}));
  auto sq = th.compose(th);
  EXPECT_EQ(sq(p).coeff(2), Rational(25, 4));
  auto inv = th.inverse();
  EXPECT_EQ(inv(th(p)), p);
}

TEST(Operators, SingularInverseOnlyWhenHit) {
  auto th = DiagonalOperator::theta_plus(Rational(-1));  // eigenvalue 0 at degree 1
  auto inv = th.inverse();
  EXPECT_EQ(inv(RationalPoly{Rational(1), Rational(0), Rational(1)}).coeff(0), -1);
  try {
    inv(RationalPoly{Rational(0), Rational(1)});
    FAIL() << "expected SingularEigenvalue";
  } catch (const SingularEigenvalue& e) {
    EXPECT_EQ(e.degree(), 1u);
  }
}

TEST(Spec, SequenceMatchesPochhammerClosedForm) {
  auto spec = canonical();
  // c_k = (a1)_{k+1} (a2)_{k+1} / ((b)_{k+1} (k+1)!)
  for (unsigned k = 0; k < 25; ++k) {
    Rational expect = pochhammer(Rational(1, 3), k + 1) * pochhammer(Rational(1, 4), k + 1) /
                      (pochhammer(Rational(1, 2), k + 1) * pochhammer(Rational(1), k + 1));
    EXPECT_EQ(spec.c(k), expect) << k;
  }
  EXPECT_EQ(spec.c0(), Rational(1, 6));
  EXPECT_EQ(spec.gamma(1), Rational(1));
  EXPECT_EQ(spec.gamma(2), Rational(1, 2));
}

TEST(Spec, HypothesisFlags) {
  EXPECT_THROW(HypergeometricSpec::from_hypergeometric({Rational(1, 3)}, {Rational(0)}), HypothesisViolation);
  auto bad = HypergeometricSpec::from_hypergeometric({Rational(3, 2), Rational(1, 4)}, {Rational(1, 2)});
  auto f = bad.flags();
  EXPECT_TRUE(f.ab);
  EXPECT_FALSE(f.a_shift_b_not_positive_integer);
  try {
    bad.require_all_flags();
    FAIL();
  } catch (const HypothesisViolation& e) {
    EXPECT_NE(std::string(e.what()).find("a_k+1-b_j"), std::string::npos);
  }
  auto pos = HypergeometricSpec::from_hypergeometric({Rational(2), Rational(1, 4)}, {Rational(1, 2)});
  EXPECT_FALSE(pos.flags().a_not_positive_integer);
  EXPECT_TRUE(canonical().flags().all());
}

TEST(Functionals, TcRoundTrip) {
  for (const auto& spec : three_specs()) {
    RationalPoly p{Rational(3), Rational(-1, 2), Rational(0), Rational(5, 7)};
    EXPECT_EQ(T_c(spec, T_c(spec, p, Direction::forward), Direction::inverse), p);
    EXPECT_EQ(T_c(spec, RationalPoly::constant(1), Direction::forward), RationalPoly::constant(1 / spec.c0()));
  }
}

TEST(Functionals, OperatorIdentitiesOnMonomials) {
  const Rational alpha(3, 2);
  const std::vector<Rational> alphas{alpha};
  for (const auto& spec : three_specs()) {
    for (unsigned deg = 0; deg <= 15; ++deg) {
      const RationalPoly mono = RationalPoly::monomial(1, deg);
      for (std::size_t k = 0; k <= 4; ++k) {
        // [t^k] H(theta) = H(theta - k) [t^k]
        EXPECT_EQ(apply_H_theta(spec.A(), mono, 0).shifted(k),
                  apply_H_theta(spec.A(), mono.shifted(k), Rational(-static_cast<long>(k))));
      }
      // psi_{i,0} o T_c = alpha Eval_alpha
      EXPECT_EQ(psi(spec, alphas, 0, 0, T_c(spec, mono, Direction::forward)), alpha * mono(alpha));
      // psi_{i,s} = psi_{i,0} o (theta + gamma_1) ... (theta + gamma_s)
      for (std::size_t s = 1; s < spec.r(); ++s) {
        RationalPoly q = mono;
        for (std::size_t w = 1; w <= s; ++w) q = DiagonalOperator::theta_plus(spec.gamma(w))(q);
        EXPECT_EQ(psi(spec, alphas, 0, s, mono), psi(spec, alphas, 0, 0, q));
      }
    }
  }
}

TEST(Functionals, ExpansionOfFs) {
  auto spec = canonical();
  auto F1 = expand_F_s(spec, Rational(2), 1, 8);
  // coefficient of 1/z^(k+1) is (k + gamma_1) c_k alpha^(k+1)
  for (long k = 0; k + 1 < 8; ++k) {
    Rational pw = 1;
    for (long j = 0; j <= k; ++j) pw *= 2;
    EXPECT_EQ(F1.coeff(k + 1), (Rational(k) + spec.gamma(1)) * spec.c(static_cast<std::size_t>(k)) * pw);
  }
}

TEST(Linalg, BareissMatchesLeibniz) {
  RationalMatrix M{{Rational(2), Rational(1, 3), Rational(-1), Rational(4)},
                   {Rational(0), Rational(5), Rational(1, 2), Rational(1)},
                   {Rational(7, 3), Rational(1), Rational(0), Rational(-2)},
                   {Rational(1), Rational(1), Rational(1), Rational(1, 5)}};
  EXPECT_EQ(determinant(M), leibniz_det(M));
  RationalMatrix S{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  EXPECT_EQ(determinant(S), 0);
  EXPECT_EQ(rank(S), 1u);
}

TEST(Linalg, PolynomialDeterminant) {
  PolyMatrix M{{RationalPoly{Rational(0), Rational(1)}, RationalPoly::constant(1)},
               {RationalPoly::constant(2), RationalPoly{Rational(1), Rational(1)}}};
  // z(1+z) - 2
  EXPECT_EQ(determinant(M), (RationalPoly{Rational(-2), Rational(1), Rational(1)}));
}

TEST(Linalg, NullspaceAndSolve) {
  RationalMatrix M{{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)}};
  auto ns = nullspace(M, 3);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
  RationalMatrix A{{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
  auto x = solve_linear(A, {Rational(3), Rational(1)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 1);
}

TEST(Linalg, Interpolation) {
  RationalPoly p{Rational(1, 3), Rational(0), Rational(-2), Rational(1)};
  std::vector<Rational> xs, ys;
  for (int j = 0; j < 4; ++j) {
    xs.emplace_back(j + 1);
    ys.push_back(p(xs.back()));
  }
  EXPECT_EQ(interpolate(xs, ys), p);
}
