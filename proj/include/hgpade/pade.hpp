#pragma once

#include <string>
#include <vector>

#include "hgpade/functionals.hpp"
#include "hgpade/laurent.hpp"
#include "hgpade/linalg.hpp"
#include "hgpade/spec.hpp"

namespace hgpade {

/// The family P_l, P_{l,i,s}, R_{l,i,s} for one (spec, alphas, n).
/// Indices: 0 <= l <= rm, 0 <= i < m, 0 <= s < r.
struct PadeSystem {
  HypergeometricSpec spec;
  std::vector<Rational> alphas{};
  unsigned n = 1;
  long truncation = 0;
  std::vector<RationalPoly> P{};
  std::vector<std::vector<std::vector<RationalPoly>>> Pis{};  // [l][i][s]
  std::vector<std::vector<std::vector<LaurentTail>>> R{};     // [l][i][s]

  std::size_t r() const { return spec.r(); }
  std::size_t m() const { return alphas.size(); }
  std::size_t rm() const { return r() * m(); }
};

/// rm(n+1) + n + 5.
long default_truncation(std::size_t r, std::size_t m, unsigned n);

/// Throws HypothesisViolation for zero or repeated alphas or n = 0.
void validate_alphas(std::span<const Rational> alphas);

/// t^l prod_i (t - alpha_i)^(rn).
RationalPoly pade_seed(std::size_t r, std::span<const Rational> alphas, unsigned n, std::size_t ell);

RationalPoly build_P(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n, std::size_t ell);

/// psi_{i,s}((P(z) - P(t)) / (z - t)) for an arbitrary polynomial P.
RationalPoly divided_difference_image(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                                      const RationalPoly& P);
RationalPoly build_P_is(const HypergeometricSpec& spec, std::span<const Rational> alphas, unsigned n,
                        std::size_t ell, std::size_t i, std::size_t s);

enum class RemainderRoute { functional, series };

/// Tail of P(z) F_s(alpha/z) - P_{i,s}(z) below `truncation`.
LaurentTail remainder_of(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                         const RationalPoly& P, const RationalPoly& Pis, long truncation, RemainderRoute route);
LaurentTail remainder(const PadeSystem& system, std::size_t ell, std::size_t i, std::size_t s, long truncation,
                      RemainderRoute route = RemainderRoute::functional);

/// Builds every member (parallel over l). Requires the (AB) condition only;
/// truncation <= 0 selects default_truncation.
PadeSystem build_system(const HypergeometricSpec& spec, std::vector<Rational> alphas, unsigned n,
                        long truncation = 0);

struct VerificationReport {
  bool passed = true;
  std::vector<std::string> failures;
  std::size_t checks = 0;
};

/// Re-checks degrees, orders at infinity and the two remainder routes.
VerificationReport verify_system(const PadeSystem& system);

/// Solution space of "deg P0 <= M, ord(P0 f_j - P_j) >= n_j + 1".
struct PadeKernel {
  std::size_t M = 0;
  RationalMatrix equations;                // rows act on (p_0, ..., p_M)
  std::vector<std::vector<Rational>> basis;
  std::vector<LaurentTail> functions;
};

/// Exact kernel of the linear system for the given tails. Throws
/// InsufficientPrecision when a tail is too short and std::invalid_argument on
/// mismatched sizes or M < sum n_j.
PadeKernel solve_pade_nullspace(const std::vector<LaurentTail>& f, const std::vector<unsigned>& n_vec,
                                std::size_t M);

/// P_j = polynomial part of P0 f_j for a kernel vector.
std::vector<RationalPoly> pade_family(const PadeKernel& kernel, const std::vector<Rational>& p0);

/// Exact membership of P0 in the kernel.
bool in_solution_space(const PadeKernel& kernel, const RationalPoly& P0);

}  // namespace hgpade
