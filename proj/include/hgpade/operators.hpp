#pragma once

#include <functional>
#include <string>

#include "hgpade/polynomial.hpp"

namespace hgpade {

/// Endomorphism of Q[t] acting diagonally on monomials: t^k -> lambda(k) t^k.
/// Eigenvalues are only consulted on degrees carrying a nonzero coefficient.
class DiagonalOperator {
 public:
  using Eigenvalue = std::function<Rational(std::size_t)>;

  DiagonalOperator(Eigenvalue eigenvalue, std::string description);

  static DiagonalOperator identity();
  /// theta_t + shift.
  static DiagonalOperator theta_plus(const Rational& shift);
  /// H(theta_t + shift) for a polynomial H.
  static DiagonalOperator polynomial_in_theta(const RationalPoly& H, const Rational& shift,
                                              std::string description = {});

  Rational eigenvalue(std::size_t k) const { return eigenvalue_(k); }
  const std::string& description() const { return description_; }

  RationalPoly operator()(const RationalPoly& p) const;

  /// (*this) o other.
  DiagonalOperator compose(const DiagonalOperator& other) const;
  /// Coefficientwise inverse; a zero eigenvalue raises SingularEigenvalue
  /// only when it meets a nonzero coefficient.
  DiagonalOperator inverse() const;

 private:
  Eigenvalue eigenvalue_;
  std::string description_;
};

/// H(theta_t + shift)(P).
RationalPoly apply_H_theta(const RationalPoly& H, const RationalPoly& P, const Rational& shift);
/// H(theta_t + shift)^{-1}(P). Throws SingularEigenvalue.
RationalPoly apply_H_theta_inverse(const RationalPoly& H, const RationalPoly& P, const Rational& shift);

}  // namespace hgpade
