#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgpade/ball.hpp"
#include "hgpade/pade.hpp"
#include "hgpade/spec.hpp"

namespace hgpade {

/// sum_k t_k with t_0 given and t_{k+1}/t_k = z prod(k + num) / prod(k + den).
/// Requires num.size() <= den.size().
struct RatioSeries {
  Rational t0;
  Rational z;
  std::vector<Rational> num;
  std::vector<Rational> den;
};

struct SeriesValue {
  Ball value;
  std::size_t terms = 0;
  Rational tail_bound;  // already folded into value's radius
};

/// Rigorous ball for the series, truncated once the geometric tail majorant
/// drops below 2^-bits relative to the partial sum.
SeriesValue sum_ratio_series(const RatioSeries& series, unsigned bits);

/// pFq(a; b; z). Throws std::invalid_argument for p > q + 1 or a non-positive
/// integer b_j, Divergence for |z| >= 1 when p = q + 1.
Ball eval_pFq(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& z, unsigned bits);

enum class FamilyRoute { direct, closed_form };

/// F_0(x), ..., F_{r-1}(x) with F_s(x) = sum_k f_k x^(k+1).
/// closed_form needs a hypergeometric spec.
std::vector<Ball> eval_F_family(const HypergeometricSpec& spec, const Rational& x, unsigned bits,
                                FamilyRoute route = FamilyRoute::direct);

struct DualRouteCheck {
  std::vector<Ball> direct;
  std::vector<Ball> closed_form;
  double worst_log2_relative = 0;  // log2 of max |direct - closed| / |direct|
  bool agree = false;
};

/// Compares the two routes at relative 2^-tolerance_bits.
DualRouteCheck check_F_family(const HypergeometricSpec& spec, const Rational& x, unsigned bits,
                              unsigned tolerance_bits);

/// sum_{k>=0} z^(k+1) / (k + x + 1)^power, summed on its own.
Ball eval_lerch(const Rational& x, const Rational& z, unsigned power, unsigned bits);

/// eta = zeta = (x+1, ..., x+1), c0 = 1/(x+1)^r, so that F_s = Phi_{r-s}(x, .).
HypergeometricSpec lerch_spec(const Rational& x, std::size_t r);

/// R(beta) = sum_{k>=0} psi(t^k P) / beta^(k+1) as an exact partial sum plus a
/// rational bound on the rest.
struct RemainderValue {
  Rational partial;
  Rational tail_bound;
  std::size_t terms = 0;
  Ball ball(unsigned bits) const;
  /// log|R|; the partial sum dominates the tail by construction.
  double log_abs() const;
};

/// Archimedean evaluation with tail <= 2^-rel_bits |partial|. Throws
/// Divergence unless |alpha| < |beta|.
RemainderValue remainder_value(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                               const RationalPoly& P, const Rational& beta, unsigned rel_bits);
RemainderValue remainder_value(const PadeSystem& system, std::size_t ell, std::size_t i, std::size_t s,
                               const Rational& beta, unsigned rel_bits);

/// Exact v_p(R(beta)), certified by a valuation lower bound on the tail.
/// Throws Divergence unless |alpha/beta|_p < 1 makes the tail shrink.
long remainder_valuation(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                         const RationalPoly& P, const Rational& beta, std::uint64_t p);
long remainder_valuation(const PadeSystem& system, std::size_t ell, std::size_t i, std::size_t s,
                         const Rational& beta, std::uint64_t p);

struct IdentityEntry {
  std::size_t ell = 0, i = 0, s = 0;
  double log2_residual = 0;  // log2 upper bound of |P F - P_is - R|
  double log2_R = 0;
  bool passed = false;
};

struct IdentityReport {
  unsigned bits = 0;
  bool passed = true;
  std::vector<IdentityEntry> entries;
};

/// Checks |P_l(beta) F_s(alpha_i/beta) - P_{l,i,s}(beta) - R_{l,i,s}(beta)| <= 2^-bits |R|.
IdentityReport check_remainder_identity(const PadeSystem& system, const Rational& beta, unsigned bits);

}  // namespace hgpade
