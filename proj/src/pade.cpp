#include "hgpade/pade.hpp"

#include <stdexcept>

#include "hgpade/errors.hpp"
#include "hgpade/parallel.hpp"

namespace hgpade {

long default_truncation(std::size_t r, std::size_t m, unsigned n) {
  return static_cast<long>(r * m * (n + 1) + n + 5);
}

void validate_alphas(std::span<const Rational> alphas) {
  if (alphas.empty()) throw HypothesisViolation("need at least one alpha");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] == 0) throw HypothesisViolation("alpha_" + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j) {
      if (alphas[i] == alphas[j]) throw HypothesisViolation("alphas must be pairwise distinct");
    }
  }
}

RationalPoly pade_seed(std::size_t r, std::span<const Rational> alphas, unsigned n, std::size_t ell) {
  RationalPoly h = RationalPoly::monomial(1, ell);
  for (const auto& a : alphas) h = h * RationalPoly::linear_power(a, static_cast<unsigned>(r * n));
  return h;
}

RationalPoly build_P(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n, std::size_t ell) {
  if (n == 0) throw HypothesisViolation("n must be >= 1");
  validate_alphas(alphas);
  const std::size_t r = spec.r();
  RationalPoly h = pade_seed(r, alphas, n, ell);
  auto c = spec.c_sequence(h.size());
  BigInt fact = 1;
  for (unsigned j = 2; j < n; ++j) fact *= j;
  BigInt fact_r = 1;
  for (std::size_t j = 0; j < r; ++j) fact_r *= fact;
  std::vector<Rational> v(h.coeffs());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    Rational eig = 1;
    for (unsigned j = 1; j < n; ++j) eig *= spec.B()(Rational(k + j));
    v[k] *= eig / c[k];
    v[k] /= fact_r;
  }
  return RationalPoly(std::move(v));
}

RationalPoly divided_difference_image(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                                      const RationalPoly& P) {
  if (P.degree() < 1) return {};
  const std::size_t d = static_cast<std::size_t>(P.degree());
  auto w = psi_weights(spec, alpha, s, d);
  std::vector<Rational> out(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rational acc = 0;
    for (std::size_t k = j + 1; k <= d; ++k) acc += P.coeffs()[k] * w[k - 1 - j];
    out[j] = acc;
  }
  return RationalPoly(std::move(out));
}

RationalPoly build_P_is(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n,
                        std::size_t ell, std::size_t i, std::size_t s) {
  if (i >= alphas.size()) throw std::out_of_range("alpha index");
  return divided_difference_image(spec, alphas[i], s, build_P(spec, alphas, n, ell));
}

LaurentTail remainder_of(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                         const RationalPoly& P, const RationalPoly& Pis, long truncation, RemainderRoute route) {
  if (truncation < 2) throw std::invalid_argument("remainder truncation must be >= 2");
  if (route == RemainderRoute::functional) {
    // coefficient of 1/z^(k+1) is psi(t^k P)
    const std::size_t terms = static_cast<std::size_t>(truncation - 1);
    auto w = psi_weights(spec, alpha, s, P.size() + terms);
    std::vector<Rational> v(terms);
    for (std::size_t k = 0; k < terms; ++k) {
      Rational acc = 0;
      for (std::size_t j = 0; j < P.size(); ++j) acc += P.coeffs()[j] * w[j + k];
      v[k] = acc;
    }
    return LaurentTail(1, std::move(v), truncation);
  }
  const long d = P.is_zero() ? 0 : P.degree();
  LaurentTail lhs = LaurentTail::from_polynomial(P, truncation + 1) * expand_F_s(spec, alpha, s, truncation + d);
  return lhs - LaurentTail::from_polynomial(Pis, truncation);
}

LaurentTail remainder(const PadeSystem& system, std::size_t ell, std::size_t i, std::size_t s, long truncation,
                      RemainderRoute route) {
  return remainder_of(system.spec, system.alphas.at(i), s, system.P.at(ell), system.Pis.at(ell).at(i).at(s),
                      truncation, route);
}

PadeSystem build_system(const HypergeometricSpec& spec, std::vector<Rational> alphas, unsigned n, long truncation) {
  if (n == 0) throw HypothesisViolation("n must be >= 1");
  validate_alphas(alphas);
  PadeSystem sys{spec, std::move(alphas), n, 0, {}, {}, {}};
  const std::size_t r = sys.r(), m = sys.m(), rm = sys.rm();
  sys.truncation = truncation > 0 ? truncation : default_truncation(r, m, n);
  sys.P.resize(rm + 1);
  sys.Pis.assign(rm + 1, std::vector<std::vector<RationalPoly>>(m, std::vector<RationalPoly>(r)));
  sys.R.assign(rm + 1, std::vector<std::vector<LaurentTail>>(m, std::vector<LaurentTail>(r)));
  spec.c_sequence(static_cast<std::size_t>(rm * (n + 1) + 1) + static_cast<std::size_t>(sys.truncation));
  parallel_for(rm + 1, [&](std::size_t ell) {
    sys.P[ell] = build_P(spec, sys.alphas, n, ell);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < r; ++s) {
        sys.Pis[ell][i][s] = divided_difference_image(spec, sys.alphas[i], s, sys.P[ell]);
        sys.R[ell][i][s] = remainder_of(spec, sys.alphas[i], s, sys.P[ell], sys.Pis[ell][i][s], sys.truncation,
                                        RemainderRoute::functional);
      }
    }
  });
  return sys;
}

VerificationReport verify_system(const PadeSystem& sys) {
  VerificationReport rep;
  auto fail = [&](std::string msg) {
    rep.passed = false;
    rep.failures.push_back(std::move(msg));
  };
  const std::size_t r = sys.r(), m = sys.m(), rm = sys.rm();
  const long n = sys.n;
  if (sys.P.size() != rm + 1) {
    fail("expected " + std::to_string(rm + 1) + " polynomials P_l");
    return rep;
  }
  for (std::size_t ell = 0; ell <= rm; ++ell) {
    const long want = static_cast<long>(rm) * n + static_cast<long>(ell);
    ++rep.checks;
    if (sys.P[ell].degree() != want) {
      fail("deg P_" + std::to_string(ell) + " = " + std::to_string(sys.P[ell].degree()) + ", expected " +
           std::to_string(want));
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < r; ++s) {
        const std::string idx = "(l,i,s) = (" + std::to_string(ell) + "," + std::to_string(i + 1) + "," +
                                std::to_string(s) + ")";
        const auto& Pis = sys.Pis[ell][i][s];
        ++rep.checks;
        if (!Pis.is_zero() && Pis.degree() > want) fail("deg P_{l,i,s} exceeds rmn+l at " + idx);
        auto by_functional = remainder(sys, ell, i, s, sys.truncation, RemainderRoute::functional);
        auto by_series = remainder(sys, ell, i, s, sys.truncation, RemainderRoute::series);
        ++rep.checks;
        if (!(by_functional - by_series).is_zero_to_truncation()) {
          fail("remainder routes disagree at " + idx);
        }
        ++rep.checks;
        if (!by_series.ord_at_least(n + 1)) {
          fail("ord R < n+1 at " + idx + ": ord = " + std::to_string(by_series.ord()));
        }
      }
    }
  }
  return rep;
}

PadeKernel solve_pade_nullspace(const std::vector<LaurentTail>& f, const std::vector<unsigned>& n_vec, std::size_t M) {
  if (f.size() != n_vec.size() || f.empty()) throw std::invalid_argument("one weight per function required");
  std::size_t total = 0;
  for (auto nj : n_vec) total += nj;
  if (M < total) throw std::invalid_argument("M must be at least the sum of the weights");
  PadeKernel ker;
  ker.M = M;
  ker.functions = f;
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (unsigned e = 1; e <= n_vec[j]; ++e) {
      std::vector<Rational> row(M + 1);
      for (std::size_t k = 0; k <= M; ++k) row[k] = f[j].coeff(static_cast<long>(e + k));
      ker.equations.push_back(std::move(row));
    }
  }
  ker.basis = nullspace(ker.equations, M + 1);
  if (ker.basis.empty()) throw std::logic_error("empty Pade kernel despite M >= sum of weights");
  return ker;
}

std::vector<RationalPoly> pade_family(const PadeKernel& kernel, const std::vector<Rational>& p0) {
  RationalPoly P0(p0);
  std::vector<RationalPoly> out{P0};
  for (const auto& fj : kernel.functions) {
    out.push_back((LaurentTail::from_polynomial(P0, fj.truncation()) * fj).polynomial_part());
  }
  return out;
}

bool in_solution_space(const PadeKernel& kernel, const RationalPoly& P0) {
  if (!P0.is_zero() && P0.degree() > static_cast<long>(kernel.M)) return false;
  for (const auto& row : kernel.equations) {
    Rational acc = 0;
    for (std::size_t k = 0; k < P0.size(); ++k) acc += row[k] * P0.coeffs()[k];
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace hgpade
