#include "hgpade/wronskian.hpp"

#include <algorithm>

#include "hgpade/errors.hpp"

namespace hgpade {

namespace {

long binom2(long k) { return k * (k - 1) / 2; }

Rational pow_q(const Rational& x, long e) {
  Rational out = 1;
  for (long k = 0; k < e; ++k) out *= x;
  return out;
}

BigInt factorial(unsigned k) {
  BigInt f = 1;
  for (unsigned j = 2; j <= k; ++j) f *= j;
  return f;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> wronskian_row_order(std::size_t r, std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t s = r; s-- > 0;) rows.emplace_back(i, s);
  }
  return rows;
}

PolyMatrix wronskian_matrix(const PadeSystem& sys) {
  const std::size_t rm = sys.rm();
  PolyMatrix M(rm + 1, std::vector<RationalPoly>(rm + 1));
  auto rows = wronskian_row_order(sys.r(), sys.m());
  for (std::size_t ell = 0; ell <= rm; ++ell) {
    M[0][ell] = sys.P[ell];
    for (std::size_t k = 0; k < rows.size(); ++k) M[k + 1][ell] = sys.Pis[ell][rows[k].first][rows[k].second];
  }
  return M;
}

RationalPoly delta_polynomial(const PadeSystem& sys) { return determinant(wronskian_matrix(sys)); }

Rational delta_of_system(const PadeSystem& sys) {
  auto d = delta_polynomial(sys);
  if (d.degree() > 0) {
    throw TheoryViolation("nonconstant determinant: Delta(z) has degree " + std::to_string(d.degree()) + " in z");
  }
  return d.coeff(0);
}

Rational leading_coefficient_Prm(const PadeSystem& sys) {
  return sys.P.at(sys.rm()).coeff(sys.rm() * (sys.n + 1));
}

Rational theta_det(const PadeSystem& sys) {
  const std::size_t rm = sys.rm();
  auto rows = wronskian_row_order(sys.r(), sys.m());
  RationalMatrix q(rm, std::vector<Rational>(rm));
  for (std::size_t ell = 0; ell < rm; ++ell) {
    RationalPoly tn = sys.P[ell].shifted(sys.n);
    for (std::size_t k = 0; k < rm; ++k) q[k][ell] = psi(sys.spec, sys.alphas, rows[k].first, rows[k].second, tn);
  }
  return determinant(q);
}

std::vector<Rational> a0s_values(const HypergeometricSpec& spec, unsigned n) {
  const std::size_t r = spec.r();
  std::vector<Rational> out(r, Rational(1));
  for (std::size_t s = 0; s < r; ++s) {
    for (std::size_t i = 0; i < r; ++i) {
      for (unsigned k = 1; k <= n; ++k) out[s] *= spec.eta()[i] - k - spec.zeta()[s];
    }
  }
  return out;
}

Rational a0s_by_change_of_basis(const HypergeometricSpec& spec, unsigned n, std::size_t s,
                                const std::vector<Rational>& extra_gamma) {
  const std::size_t r = spec.r();
  if (s >= r) throw std::out_of_range("level s must satisfy 0 <= s < r");
  const std::size_t N = r * n;
  auto gamma = [&](std::size_t w) -> Rational {
    if (w <= r) return spec.gamma(w);
    return extra_gamma.empty() ? Rational(static_cast<long>(w)) : extra_gamma[(w - r - 1) % extra_gamma.size()] + static_cast<long>(w);
  };
  RationalPoly target = RationalPoly::constant(1);
  for (unsigned j = 1; j <= n; ++j) {
    std::vector<Rational> shifted;
    for (const auto& e : spec.eta()) shifted.push_back(e - j);
    target = target * RationalPoly::from_shifts(shifted);
  }
  // column k holds the monomial coefficients of prod_{w=1}^k (X + gamma_{r-s-1+w})
  RationalMatrix M(N + 1, std::vector<Rational>(N + 1));
  RationalPoly basis = RationalPoly::constant(1);
  for (std::size_t k = 0; k <= N; ++k) {
    if (k > 0) basis = basis * RationalPoly{gamma(r - s - 1 + k), Rational(1)};
    for (std::size_t row = 0; row <= N; ++row) M[row][k] = basis.coeff(row);
  }
  std::vector<Rational> rhs(N + 1);
  for (std::size_t row = 0; row <= N; ++row) rhs[row] = target.coeff(row);
  auto x = solve_linear(M, rhs);
  if (!x) throw std::logic_error("change-of-basis matrix is singular");
  return (*x)[0];
}

Rational C_um(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n, unsigned u,
              AlphaWeight weight) {
  const std::size_t r = spec.r(), m = alphas.size(), rm = r * m;
  if (m == 0) return 1;
  RationalPoly core = RationalPoly::monomial(1, u);
  for (const auto& a : alphas) core = core * RationalPoly::linear_power(a, static_cast<unsigned>(r * n));
  RationalMatrix M(rm, std::vector<Rational>(rm));
  for (std::size_t ell = 0; ell < rm; ++ell) {
    RationalPoly g = core.shifted(ell);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < r; ++s) M[i * r + s][ell] = psi_tilde(spec, alphas[i], s, g, weight);
    }
  }
  return determinant(M);
}

long c_um_homogeneity_degree(std::size_t r, std::size_t m, unsigned n, unsigned u, AlphaWeight weight) {
  const long R = static_cast<long>(r), M = static_cast<long>(m);
  const long per_alpha = R * (static_cast<long>(u) + (weight == AlphaWeight::k_plus_1 ? 1 : 0)) + R * R * n + binom2(R);
  return M * per_alpha + binom2(M) * (2L * n + 1) * R * R;
}

namespace {

Rational difference_product(std::span<const Rational> alphas, long power) {
  Rational out = 1;
  for (std::size_t i2 = 0; i2 < alphas.size(); ++i2) {
    for (std::size_t i1 = 0; i1 < i2; ++i1) out *= pow_q(alphas[i2] - alphas[i1], power);
  }
  return out;
}

Rational alpha_product(std::span<const Rational> alphas) {
  Rational out = 1;
  for (const auto& a : alphas) out *= a;
  return out;
}

}  // namespace

CumFactorization c_um_factor(const HypergeometricSpec& spec, std::size_t m, unsigned n, unsigned u,
                             const std::vector<std::vector<Rational>>& tuples, AlphaWeight weight) {
  if (tuples.size() < 2) throw std::invalid_argument("need at least two alpha tuples");
  const long r = static_cast<long>(spec.r());
  const long vpow = (2L * n + 1) * r * r;
  CumFactorization out;
  out.tuples = tuples;
  std::vector<Rational> Q, pi;
  for (const auto& t : tuples) {
    if (t.size() != m) throw std::invalid_argument("alpha tuple has the wrong length");
    validate_alphas(t);
    Rational C = C_um(spec, t, n, u, weight);
    if (C == 0) throw TheoryViolation("C_{u,m} vanishes at an admissible alpha tuple");
    Q.push_back(C / difference_product(t, vpow));
    pi.push_back(alpha_product(t));
  }
  std::size_t ref = 0;
  while (ref < tuples.size() && abs(pi[ref]) == abs(pi[0])) ++ref;
  if (ref == tuples.size()) throw std::invalid_argument("alpha tuples must differ in |prod alpha_i|");
  const Rational ratio = Q[ref] / Q[0];
  const Rational base = pi[ref] / pi[0];
  const long bound = c_um_homogeneity_degree(spec.r(), m, n, u, weight) / static_cast<long>(std::max<std::size_t>(m, 1)) + 1;
  long e = -1;
  Rational p = 1;
  for (long k = 0; k <= bound; ++k, p *= base) {
    if (p == ratio) {
      e = k;
      break;
    }
  }
  if (e < 0) throw TheoryViolation("factorization mismatch: no alpha exponent fits");
  out.exponent_e = e;
  for (std::size_t t = 0; t < tuples.size(); ++t) out.quotients.push_back(Q[t] / pow_q(pi[t], e));
  out.c = out.quotients.front();
  for (const auto& q : out.quotients) {
    if (q != out.c) throw TheoryViolation("factorization mismatch: quotient depends on the alpha tuple");
  }
  return out;
}

Rational c_um_value(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n, unsigned u) {
  const long r = static_cast<long>(spec.r());
  const long e = r * static_cast<long>(u) + r * r * n + binom2(r);
  Rational denom = pow_q(alpha_product(alphas), e) * difference_product(alphas, (2L * n + 1) * r * r);
  return C_um(spec, alphas, n, u, AlphaWeight::k) / denom;
}

long vanishing_order_at_collision(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n,
                                  unsigned u, AlphaWeight weight) {
  if (alphas.size() < 2) throw std::invalid_argument("collision order needs m >= 2");
  const long D = c_um_homogeneity_degree(spec.r(), alphas.size(), n, u, weight);
  std::vector<Rational> xs, ys;
  std::vector<Rational> a(alphas.begin(), alphas.end());
  for (long j = 1; j <= D + 1; ++j) {
    a[1] = a[0] + j;
    xs.emplace_back(j);
    ys.push_back(C_um(spec, a, n, u, weight));
  }
  RationalPoly p = interpolate(xs, ys);
  if (p.is_zero()) return -1;
  long k = 0;
  while (p.coeff(static_cast<std::size_t>(k)) == 0) ++k;
  return k;
}

Rational reduction_factor(std::span<const Rational> zeta, unsigned n, unsigned u) {
  const std::size_t r = zeta.size();
  RationalPoly core = RationalPoly::monomial(1, u) * RationalPoly::linear_power(1, static_cast<unsigned>(r * n));
  RationalMatrix M(r, std::vector<Rational>(r));
  for (std::size_t ell = 0; ell < r; ++ell) {
    RationalPoly g = core.shifted(ell);
    for (std::size_t s = 0; s < r; ++s) {
      Rational acc = 0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.coeffs()[k] == 0) continue;
        Rational den = 1;
        for (std::size_t j = 0; j <= s; ++j) den *= Rational(k) + zeta[j];
        acc += g.coeffs()[k] / den;
      }
      M[s][ell] = acc;
    }
  }
  return determinant(M);
}

std::vector<Rational> group_zeta(std::span<const Rational> zeta) {
  std::vector<Rational> out;
  std::vector<bool> used(zeta.size(), false);
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i; j < zeta.size(); ++j) {
      if (!used[j] && zeta[j] == zeta[i]) {
        out.push_back(zeta[j]);
        used[j] = true;
      }
    }
  }
  return out;
}

FinalDeterminant final_det(std::span<const Rational> zeta, unsigned n, unsigned u) {
  FinalDeterminant out;
  out.grouped_zeta = group_zeta(zeta);
  for (const auto& z : out.grouped_zeta) {
    if (!out.multiplicities.empty() && out.multiplicities.back().first == z) ++out.multiplicities.back().second;
    else out.multiplicities.emplace_back(z, 1u);
  }
  const std::size_t r = zeta.size();
  RationalPoly core = RationalPoly::monomial(1, u) * RationalPoly::linear_power(1, static_cast<unsigned>(r * n));
  RationalMatrix M;
  out.E = 1;
  for (std::size_t w = 0; w < out.multiplicities.size(); ++w) {
    const auto& [zw, rw] = out.multiplicities[w];
    Rational p = 1;
    for (std::size_t j = 0; j < w; ++j) p /= pow_q(out.multiplicities[j].first - zw, out.multiplicities[j].second);
    for (unsigned sw = 1; sw <= rw; ++sw) {
      std::vector<Rational> row;
      for (std::size_t ell = 0; ell < r; ++ell) row.push_back(phi_zeta_s(zw, sw, core.shifted(ell)));
      M.push_back(std::move(row));
      out.E *= p;
    }
  }
  out.value = determinant(M);
  return out;
}

WronskianReport certify_nonvanishing(const PadeSystem& sys) {
  WronskianReport rep;
  const auto& spec = sys.spec;
  const std::size_t r = sys.r(), m = sys.m(), rm = sys.rm();
  const unsigned n = sys.n;
  rep.flags = spec.flags();
  rep.r = r;
  rep.m = m;
  rep.n = n;
  const bool theory_applies = rep.flags.all();
  auto zero_link = [&](const std::string& what) {
    std::string msg = what + " evaluated to 0";
    if (theory_applies) rep.violations.push_back(msg);
    else rep.notes.push_back(msg + " (hypothesis flags fail: " + rep.flags.violations.front() + ")");
  };
  auto failed_identity = [&](const std::string& what) {
    rep.violations.push_back(what + " does not hold");
  };

  RationalPoly dpoly = delta_polynomial(sys);
  rep.delta_z_degree = dpoly.is_zero() ? -1 : dpoly.degree();
  rep.delta = dpoly.coeff(0);
  if (rep.delta_z_degree > 0) rep.violations.push_back("Delta(z) is not constant in z");
  if (rep.delta == 0) zero_link("Delta");

  rep.leading_coeff_Prm = leading_coefficient_Prm(sys);
  rep.theta = theta_det(sys);
  if (rep.theta == 0) zero_link("Theta");
  const Rational lc_theta = rep.leading_coeff_Prm * rep.theta;
  rep.route_delta_theta = rep.delta_z_degree <= 0 && rep.delta == lc_theta;
  rep.route_delta_theta_stated_sign = rep.delta_z_degree <= 0 && rep.delta == (rm % 2 ? -lc_theta : lc_theta);
  if (!rep.route_delta_theta) failed_identity("Delta = lc(P_rm) * Theta");

  rep.a0s = a0s_values(spec, n);
  for (std::size_t s = 0; s < r; ++s) {
    if (rep.a0s[s] == 0) zero_link("a_{0," + std::to_string(s) + "}");
  }
  rep.psi_P_hat = C_um(spec, sys.alphas, n, n);
  Rational rhs = rep.psi_P_hat;
  for (const auto& a : sys.alphas) rhs *= pow_q(a, static_cast<long>(r));
  for (const auto& a : rep.a0s) rhs *= pow_q(a, static_cast<long>(m));
  Rational fact = 1;
  const Rational fn = Rational(factorial(n - 1));
  for (std::size_t k = 0; k < r * r * m; ++k) fact *= fn;
  rep.route_theta_psi = rep.theta * fact == rhs;
  if (!rep.route_theta_psi) failed_identity("Theta (n-1)!^(r^2 m) = prod alpha^r prod a_{0,s}^m Psi(P-hat)");

  // c_{u,m} chain down to m = 0
  unsigned u = n;
  rep.reduction_holds = true;
  rep.final_det_identity_holds = true;
  const auto grouped = group_zeta(spec.zeta());
  for (std::size_t k = 0; k <= m; ++k) {
    std::span<const Rational> head(sys.alphas.data(), m - k);
    rep.chain_u.push_back(u);
    rep.c_um_chain.push_back(c_um_value(spec, head, n, u));
    if (rep.c_um_chain.back() == 0) zero_link("c_{" + std::to_string(u) + "," + std::to_string(m - k) + "}");
    if (k < m) {
      rep.reduction_factors.push_back(reduction_factor(spec.zeta(), n, u));
      if (rep.reduction_factors.back() == 0) zero_link("L(u = " + std::to_string(u) + ")");
      auto fd = final_det(spec.zeta(), n, u);
      rep.final_dets.push_back(fd.value);
      rep.final_E.push_back(fd.E);
      if (fd.value == 0) zero_link("final determinant at u = " + std::to_string(u));
      if (reduction_factor(grouped, n, u) != fd.E * fd.value) rep.final_det_identity_holds = false;
    }
    u += static_cast<unsigned>(r * (n + 1));
  }
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t mk = m - k;
    const bool odd = (static_cast<unsigned long>(r * r) * n * (mk - 1)) % 2 == 1;
    Rational predicted = rep.c_um_chain[k + 1] * rep.reduction_factors[k];
    if (odd) predicted = -predicted;
    if (predicted != rep.c_um_chain[k]) rep.reduction_holds = false;
  }
  if (rep.c_um_chain.back() != 1) failed_identity("c_{u,0} = 1");
  if (!rep.reduction_holds) failed_identity("reduction c_{u,m} = (-1)^(r^2 n (m-1)) c_{u+r(n+1),m-1} L(u)");
  if (!rep.final_det_identity_holds) failed_identity("L(u) = E * final determinant");

  if (rep.psi_P_hat != 0) {
    std::vector<std::vector<Rational>> tuples;
    for (long lambda : {1L, 2L, 3L}) {
      std::vector<Rational> t;
      for (const auto& a : sys.alphas) t.push_back(a * lambda);
      tuples.push_back(std::move(t));
    }
    try {
      rep.exponent_e = c_um_factor(spec, m, n, n, tuples).exponent_e;
    } catch (const TheoryViolation& e) {
      rep.violations.push_back(e.what());
    }
  }
  rep.certified_nonzero = rep.delta_z_degree == 0 && rep.delta != 0;
  return rep;
}

}  // namespace hgpade
