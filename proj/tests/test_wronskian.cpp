#include <map>

#include <gtest/gtest.h>

#include "hgpade/errors.hpp"
#include "hgpade/pade.hpp"
#include "hgpade/wronskian.hpp"

using namespace hgpade;

namespace {

HypergeometricSpec canonical() {
  return HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4)}, {Rational(1, 2)});
}

// sparse polynomial in N variables
using Mono = std::vector<unsigned>;
using MPoly = std::map<Mono, Rational>;

MPoly mul(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Mono e(ea.size());
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      out[e] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

MPoly in_variable(const RationalPoly& p, std::size_t var, std::size_t N) {
  MPoly out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.coeff(k) == 0) continue;
    Mono e(N, 0);
    e[var] = static_cast<unsigned>(k);
    out[e] = p.coeff(k);
  }
  return out;
}

struct RowFunctional {
  Rational alpha;
  std::size_t s;
};

// prod_{a<b} (t_b - t_a) * prod_row t_row^u H(t_row), expanded, then the
// tensor product of the row functionals applied monomial by monomial
Rational psi_by_expansion(const HypergeometricSpec& spec, const std::vector<Rational>& alphas, unsigned n, unsigned u,
                          const std::vector<RowFunctional>& rows, AlphaWeight weight) {
  const std::size_t N = rows.size();
  RationalPoly H = RationalPoly::monomial(1, u);
  for (const auto& a : alphas) H = H * RationalPoly::linear_power(a, static_cast<unsigned>(spec.r() * n));
  MPoly Q{{Mono(N, 0), Rational(1)}};
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a + 1; b < N; ++b) {
      MPoly diff = in_variable(RationalPoly::monomial(1, 1), b, N);
      for (const auto& [e, c] : in_variable(RationalPoly::monomial(1, 1), a, N)) diff[e] -= c;
      Q = mul(Q, diff);
    }
  }
  for (std::size_t a = 0; a < N; ++a) Q = mul(Q, in_variable(H, a, N));
  Rational total = 0;
  for (const auto& [e, c] : Q) {
    Rational term = c;
    for (std::size_t a = 0; a < N; ++a) {
      term *= psi_tilde(spec, rows[a].alpha, rows[a].s, RationalPoly::monomial(1, e[a]), weight);
    }
    total += term;
  }
  return total;
}

std::vector<RowFunctional> lexicographic_rows(const HypergeometricSpec& spec, const std::vector<Rational>& alphas) {
  std::vector<RowFunctional> rows;
  for (const auto& a : alphas) {
    for (std::size_t s = 0; s < spec.r(); ++s) rows.push_back({a, s});
  }
  return rows;
}

}  // namespace

TEST(Wronskian, DeltaIsNonzeroConstant) {
  auto sys = build_system(canonical(), {Rational(1)}, 1);
  RationalPoly delta = delta_polynomial(sys);
  EXPECT_EQ(delta.degree(), 0);
  EXPECT_NE(delta_of_system(sys), 0);
}

TEST(Wronskian, DeltaFactorsThroughTheta) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto& alphas : {std::vector<Rational>{1}, std::vector<Rational>{1, 2}}) {
      if (alphas.size() == 2 && n == 3) continue;
      auto sys = build_system(canonical(), alphas, n);
      Rational delta = delta_of_system(sys);
      EXPECT_EQ(delta, leading_coefficient_Prm(sys) * theta_det(sys));
    }
  }
}

TEST(Wronskian, OddRmSignOfTheStatedVariant) {
  auto spec = HypergeometricSpec::from_hypergeometric({Rational(1, 3), Rational(1, 4), Rational(1, 5)},
                                                      {Rational(1, 2), Rational(2, 3)});
  auto sys = build_system(spec, {Rational(1)}, 1);  // rm = 3
  Rational delta = delta_of_system(sys);
  Rational prod = leading_coefficient_Prm(sys) * theta_det(sys);
  EXPECT_EQ(delta, prod);
  EXPECT_NE(delta, -prod);
}

TEST(Wronskian, ColumnSwapFlipsSign) {
  auto sys = build_system(canonical(), {Rational(1)}, 1);
  Rational delta = delta_of_system(sys);
  std::swap(sys.P[0], sys.P[1]);
  std::swap(sys.Pis[0], sys.Pis[1]);
  std::swap(sys.R[0], sys.R[1]);
  EXPECT_EQ(determinant(wronskian_matrix(sys)), RationalPoly::constant(-delta));
}

TEST(Wronskian, ThetaEntriesAreRemainderCoefficients) {
  auto sys = build_system(canonical(), {Rational(1), Rational(3)}, 2);
  for (std::size_t ell = 0; ell < sys.rm(); ++ell) {
    for (std::size_t i = 0; i < sys.m(); ++i) {
      for (std::size_t s = 0; s < sys.r(); ++s) {
        EXPECT_EQ(psi(sys.spec, sys.alphas, i, s, sys.P[ell].shifted(sys.n)), sys.R[ell][i][s].coeff(sys.n + 1));
      }
    }
  }
}

TEST(Wronskian, PsiByMultivariateExpansion) {
  struct Case {
    HypergeometricSpec spec;
    std::vector<Rational> alphas;
    unsigned n, u;
  };
  std::vector<Case> cases{{canonical(), {Rational(1)}, 1, 0},
                          {canonical(), {Rational(2)}, 1, 1},
                          {canonical(), {Rational(1), Rational(2)}, 1, 0},
                          {HypergeometricSpec::from_hypergeometric({Rational(2, 7)}, {}), {Rational(1), Rational(3)}, 2, 1}};
  for (const auto& c : cases) {
    Rational oracle = psi_by_expansion(c.spec, c.alphas, c.n, c.u, lexicographic_rows(c.spec, c.alphas), AlphaWeight::k);
    EXPECT_EQ(C_um(c.spec, c.alphas, c.n, c.u), oracle);
  }
}

TEST(Wronskian, PsiAntisymmetry) {
  auto spec = canonical();
  const std::vector<Rational> alphas{Rational(1), Rational(2)};
  auto rows = lexicographic_rows(spec, alphas);
  Rational base = psi_by_expansion(spec, alphas, 1, 0, rows, AlphaWeight::k);
  ASSERT_NE(base, 0);
  auto swapped = rows;
  std::swap(swapped[0], swapped[2]);
  EXPECT_EQ(psi_by_expansion(spec, alphas, 1, 0, swapped, AlphaWeight::k), -base);
  auto repeated = rows;
  repeated[1] = repeated[0];
  EXPECT_EQ(psi_by_expansion(spec, alphas, 1, 0, repeated, AlphaWeight::k), 0);
}

TEST(Wronskian, CumSmallExamples) {
  auto spec = HypergeometricSpec::from_hypergeometric({Rational(1, 2)}, {});  // zeta = (1)
  const std::vector<Rational> one{Rational(1)};
  // t(t-1): 1/3 - 1/2
  EXPECT_EQ(C_um(spec, one, 1, 1), Rational(-1, 6));
  // (t-1): 1/2 - 1
  EXPECT_EQ(C_um(spec, one, 1, 0), Rational(-1, 2));
}

TEST(Wronskian, Homogeneity) {
  auto spec = canonical();
  const std::vector<Rational> alphas{Rational(1), Rational(3)};
  for (unsigned u : {0u, 1u}) {
    Rational base = C_um(spec, alphas, 1, u, AlphaWeight::k_plus_1);
    const long deg = c_um_homogeneity_degree(2, 2, 1, u, AlphaWeight::k_plus_1);
    EXPECT_EQ(deg, 2 * (2 * (u + 1) + 4 + 1) + 12);
    for (int lambda : {2, 3}) {
      std::vector<Rational> scaled{alphas[0] * lambda, alphas[1] * lambda};
      Rational pw = 1;
      for (long j = 0; j < deg; ++j) pw *= lambda;
      EXPECT_EQ(C_um(spec, scaled, 1, u, AlphaWeight::k_plus_1), pw * base);
    }
  }
}

TEST(Wronskian, VanishingOrderAtCollision) {
  const std::vector<Rational> alphas{Rational(1), Rational(2)};
  EXPECT_GE(vanishing_order_at_collision(canonical(), alphas, 1, 0), 12);
}

TEST(Wronskian, FactorizationAndReduction) {
  auto spec = canonical();
  const unsigned n = 1;
  for (unsigned u : {0u, 1u}) {
    auto f2 = c_um_factor(spec, 2, n, u, {{1, 2}, {1, 3}, {2, 5}});
    auto f1 = c_um_factor(spec, 1, n, u + 4, {{1}, {2}, {3}});  // u + r(n+1)
    EXPECT_EQ(f2.c, f1.c * reduction_factor(spec.zeta(), n, u));
    EXPECT_EQ(f2.exponent_e, static_cast<long>(2 * u + 4 + 1));
    for (const auto& q : f2.quotients) EXPECT_EQ(q, f2.c);
  }
}

TEST(Wronskian, A0sExamplesAndOracle) {
  auto degenerate = HypergeometricSpec::from_roots({Rational(2)}, {Rational(1)}, Rational(1));
  EXPECT_EQ(a0s_values(degenerate, 1)[0], 0);
  auto half = HypergeometricSpec::from_roots({Rational(5, 2)}, {Rational(1)}, Rational(1));
  EXPECT_EQ(a0s_values(half, 1)[0], Rational(1, 2));
  auto spec = canonical();
  for (unsigned n = 1; n <= 4; ++n) {
    auto a = a0s_values(spec, n);
    for (std::size_t s = 0; s < spec.r(); ++s) EXPECT_EQ(a[s], a0s_by_change_of_basis(spec, n, s)) << n << " " << s;
  }
}

TEST(Wronskian, FinalDeterminantSmallCase) {
  const std::vector<Rational> zeta{Rational(1)};
  auto fd = final_det(zeta, 1, 0);
  EXPECT_EQ(fd.value, Rational(-1, 2));
  auto spec = canonical();
  for (unsigned u = 0; u <= 4; ++u) {
    auto f = final_det(spec.zeta(), 1, u);
    EXPECT_NE(f.value, 0);
    EXPECT_EQ(reduction_factor(spec.zeta(), 1, u), f.E * f.value);
  }
}

TEST(Wronskian, FullChainCertifies) {
  auto sys = build_system(canonical(), {Rational(1), Rational(2)}, 1);
  auto rep = certify_nonvanishing(sys);
  EXPECT_TRUE(rep.certified_nonzero);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_TRUE(rep.route_delta_theta);
  EXPECT_TRUE(rep.route_theta_psi);
  EXPECT_TRUE(rep.reduction_holds);
  EXPECT_TRUE(rep.final_det_identity_holds);
  EXPECT_EQ(rep.c_um_chain.size(), 3u);  // m = 2, 1 and the base case 0
  EXPECT_EQ(rep.c_um_chain.back(), 1);
}

TEST(Wronskian, DegenerateInstanceReportsWhereZeroEnters) {
  // a_1 = 2 is a positive integer
  auto spec = HypergeometricSpec::from_hypergeometric({Rational(2), Rational(1, 4)}, {Rational(1, 2)});
  EXPECT_FALSE(spec.flags().all());
  auto sys = build_system(spec, {Rational(1)}, 2);
  auto rep = certify_nonvanishing(sys);
  bool zero_a0s = false;
  for (const auto& a : rep.a0s) zero_a0s = zero_a0s || a == 0;
  EXPECT_TRUE(zero_a0s);
  // outside the hypotheses a zero is a note, not a violation
  EXPECT_TRUE(rep.violations.empty());
  bool noted = false;
  for (const auto& note : rep.notes) noted = noted || note.find("a_{0,") != std::string::npos;
  EXPECT_TRUE(noted);
}
