#include "hgpade/functionals.hpp"

#include <stdexcept>

namespace hgpade {

RationalPoly T_c(const HypergeometricSpec& spec, const RationalPoly& P, Direction direction) {
  if (P.is_zero()) return {};
  auto c = spec.c_sequence(P.size());
  std::vector<Rational> v(P.coeffs());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (direction == Direction::forward) v[k] /= c[k]; else v[k] *= c[k];
  }
  return RationalPoly(std::move(v));
}

DiagonalOperator T_c_operator(const HypergeometricSpec& spec, Direction direction) {
  if (direction == Direction::forward) {
    return DiagonalOperator([spec](std::size_t k) -> Rational { return Rational(1) / spec.c(k); }, "T_c");
  }
  return DiagonalOperator([spec](std::size_t k) -> Rational { return spec.c(k); }, "T_c^-1");
}

std::vector<Rational> contiguous_coefficients(const HypergeometricSpec& spec, std::size_t s, std::size_t count) {
  if (s >= spec.r()) throw std::out_of_range("level s must satisfy 0 <= s < r");
  auto f = spec.c_sequence(count);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t w = 1; w <= s; ++w) f[k] *= Rational(k) + spec.gamma(w);
  }
  return f;
}

std::vector<Rational> psi_weights(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                                  std::size_t count) {
  auto w = contiguous_coefficients(spec, s, count);
  Rational pw = alpha;
  for (auto& x : w) {
    x *= pw;
    pw *= alpha;
  }
  return w;
}

Rational psi(const HypergeometricSpec& spec, std::span<const Rational> alphas, std::size_t i, std::size_t s,
             const RationalPoly& P) {
  if (i >= alphas.size()) throw std::out_of_range("alpha index");
  auto w = psi_weights(spec, alphas[i], s, P.size());
  Rational acc = 0;
  for (std::size_t k = 0; k < P.size(); ++k) acc += P.coeffs()[k] * w[k];
  return acc;
}

Rational psi_tilde(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s, const RationalPoly& P,
                   AlphaWeight weight) {
  if (s >= spec.r()) throw std::out_of_range("level s must satisfy 0 <= s < r");
  Rational acc = 0;
  Rational pw = weight == AlphaWeight::k ? Rational(1) : alpha;
  for (std::size_t k = 0; k < P.size(); ++k, pw *= alpha) {
    if (P.coeffs()[k] == 0) continue;
    Rational den = 1;
    for (std::size_t j = 0; j <= s; ++j) den *= Rational(k) + spec.zeta()[j];
    if (den == 0) throw std::domain_error("pole of psi_tilde at degree " + std::to_string(k));
    acc += P.coeffs()[k] * pw / den;
  }
  return acc;
}

Rational phi_zeta_s(const Rational& zeta, unsigned s, const RationalPoly& P) {
  Rational acc = 0;
  for (std::size_t k = 0; k < P.size(); ++k) {
    if (P.coeffs()[k] == 0) continue;
    Rational base = Rational(k) + zeta;
    if (base == 0 && s > 0) throw std::domain_error("pole of phi at degree " + std::to_string(k));
    Rational den = 1;
    for (unsigned j = 0; j < s; ++j) den *= base;
    acc += P.coeffs()[k] / den;
  }
  return acc;
}

LaurentTail expand_F_s(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s, long truncation) {
  if (truncation <= 1) return LaurentTail(truncation, {}, truncation);
  auto w = psi_weights(spec, alpha, s, static_cast<std::size_t>(truncation - 1));
  return LaurentTail(1, std::move(w), truncation);
}

}  // namespace hgpade
