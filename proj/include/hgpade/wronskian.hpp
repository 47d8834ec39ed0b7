#pragma once

#include <string>
#include <vector>

#include "hgpade/functionals.hpp"
#include "hgpade/linalg.hpp"
#include "hgpade/pade.hpp"

namespace hgpade {

/// Row order shared by Delta, Theta: for each i, levels s = r-1, ..., 0.
std::vector<std::pair<std::size_t, std::size_t>> wronskian_row_order(std::size_t r, std::size_t m);

/// The (rm+1)x(rm+1) polynomial matrix with columns p_l.
PolyMatrix wronskian_matrix(const PadeSystem& system);

/// det of the polynomial matrix as a polynomial in z.
RationalPoly delta_polynomial(const PadeSystem& system);

/// Constant value of Delta(z). Throws TheoryViolation if the determinant has
/// positive degree in z.
Rational delta_of_system(const PadeSystem& system);

/// Coefficient of z^(rm(n+1)) in P_rm.
Rational leading_coefficient_Prm(const PadeSystem& system);

/// Theta = det(psi_{i,s}(t^n P_l)), rows in wronskian_row_order, l < rm.
Rational theta_det(const PadeSystem& system);

/// a_{0,s} = prod_i prod_{k=1}^n (eta_i - k - zeta_{s+1}), s = 0..r-1.
std::vector<Rational> a0s_values(const HypergeometricSpec& spec, unsigned n);

/// Constant coefficient of prod_{j=1}^n A(X - j) in the basis
/// prod_{w=1}^k (X + gamma_{r-s-1+w}), by solving the change-of-basis system.
/// gamma_w for w > r is taken from `extra_gamma` (cycled).
Rational a0s_by_change_of_basis(const HypergeometricSpec& spec, unsigned n, std::size_t s,
                                const std::vector<Rational>& extra_gamma = {Rational(1, 7), Rational(2, 3)});

/// C_{u,m} = Psi(P-hat_{n,u}) evaluated as det(psi_tilde_{alpha_i,s}(t^(u+l) prod_j (t - alpha_j)^(rn))),
/// rows (i, s) lexicographic with s ascending.
Rational C_um(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n, unsigned u,
              AlphaWeight weight = AlphaWeight::k);

/// Homogeneity degree of C_{u,m} in alpha under the given convention.
long c_um_homogeneity_degree(std::size_t r, std::size_t m, unsigned n, unsigned u, AlphaWeight weight);

struct CumFactorization {
  Rational c;          // c_{u,m}
  long exponent_e = 0;  // measured exponent of each alpha_i
  std::vector<std::vector<Rational>> tuples;
  std::vector<Rational> quotients;  // c measured on each tuple
};

/// Measures e and c_{u,m} from C_{u,m} on the given tuples (at least two).
/// Throws TheoryViolation ("factorization mismatch") when the quotient varies.
CumFactorization c_um_factor(const HypergeometricSpec& spec, std::size_t m, unsigned n, unsigned u,
                             const std::vector<std::vector<Rational>>& tuples, AlphaWeight weight = AlphaWeight::k);

/// c_{u,m} directly from one tuple using e = ru + r^2 n + C(r,2) (alpha^k convention).
Rational c_um_value(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n, unsigned u);

/// Order of vanishing of j -> C_{u,m}(alpha_1, alpha_1 + j, alpha_3, ...) at j = 0, by
/// interpolation through degree_bound + 1 exact values (m >= 2).
long vanishing_order_at_collision(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n,
                                  unsigned u, AlphaWeight weight = AlphaWeight::k);

/// L(u) = det(psi_s(t^(u+l) (t-1)^(rn))) with psi_s: t^k -> 1/prod_{j<=s}(k + zeta_j).
Rational reduction_factor(std::span<const Rational> zeta, unsigned n, unsigned u);

/// zeta reordered so equal values are contiguous, in order of first occurrence.
std::vector<Rational> group_zeta(std::span<const Rational> zeta);

struct FinalDeterminant {
  Rational value;  // det(phi_{zeta_j,s_j}(t^(u+l)(t-1)^(rn)))
  Rational E;      // prod_s p_{w,s_w}
  std::vector<Rational> grouped_zeta;
  std::vector<std::pair<Rational, unsigned>> multiplicities;
};

FinalDeterminant final_det(std::span<const Rational> zeta, unsigned n, unsigned u);

struct WronskianReport {
  HypothesisFlags flags;
  std::size_t r = 0, m = 0;
  unsigned n = 0;
  long delta_z_degree = 0;
  Rational delta;
  Rational theta;
  Rational leading_coeff_Prm;
  std::vector<Rational> a0s;
  Rational psi_P_hat;  // Psi(P-hat_{n,n})
  // chain[k] = c_{u_k, m-k} with u_0 = n, u_{k+1} = u_k + r(n+1)
  std::vector<unsigned> chain_u;
  std::vector<Rational> c_um_chain;
  std::vector<Rational> reduction_factors;  // L(u_k), k < m
  std::vector<Rational> final_dets;
  std::vector<Rational> final_E;
  long exponent_e = 0;
  bool route_delta_theta = false;         // Delta = lc(P_rm) Theta
  bool route_delta_theta_stated_sign = false;  // Delta = (-1)^(rm) lc(P_rm) Theta
  bool route_theta_psi = false;           // Theta (n-1)!^(r^2 m) = prod alpha^r prod a0s^m Psi
  bool reduction_holds = false;
  bool final_det_identity_holds = false;
  bool certified_nonzero = false;
  std::vector<std::string> violations;  // theory violations (zeros or failed identities)
  std::vector<std::string> notes;
};

/// Runs the full chain. Never throws on zero links; they are reported.
WronskianReport certify_nonvanishing(const PadeSystem& system);

}  // namespace hgpade
