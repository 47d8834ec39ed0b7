#pragma once

#include <span>
#include <vector>

#include "hgpade/laurent.hpp"
#include "hgpade/operators.hpp"
#include "hgpade/spec.hpp"

namespace hgpade {

enum class Direction { forward, inverse };

/// forward: t^k -> t^k / c_k; inverse: t^k -> c_k t^k.
RationalPoly T_c(const HypergeometricSpec& spec, const RationalPoly& P, Direction direction);
DiagonalOperator T_c_operator(const HypergeometricSpec& spec, Direction direction);

/// f_k = (k + gamma_1) ... (k + gamma_s) c_k for k < count.
std::vector<Rational> contiguous_coefficients(const HypergeometricSpec& spec, std::size_t s, std::size_t count);

/// w_e = psi_{i,s}(t^e) = f_e alpha^(e+1) for e < count.
std::vector<Rational> psi_weights(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                                  std::size_t count);

/// psi_{i,s}(P) with alpha = alphas[i] (i is 0-based, 0 <= s < r).
Rational psi(const HypergeometricSpec& spec, std::span<const Rational> alphas, std::size_t i, std::size_t s,
             const RationalPoly& P);

/// Exponent convention for the alpha power in the modified functional.
enum class AlphaWeight { k, k_plus_1 };

/// t^k -> alpha^k / ((k + zeta_1) ... (k + zeta_{s+1})), or alpha^(k+1) / ... .
Rational psi_tilde(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s, const RationalPoly& P,
                   AlphaWeight weight = AlphaWeight::k);

/// phi_{zeta,s}: t^k -> 1/(k + zeta)^s. Throws std::domain_error on a pole.
Rational phi_zeta_s(const Rational& zeta, unsigned s, const RationalPoly& P);

/// F_s(alpha/z) = sum_k f_k alpha^(k+1) / z^(k+1), exact below `truncation`.
LaurentTail expand_F_s(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s, long truncation);

}  // namespace hgpade
