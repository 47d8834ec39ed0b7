#pragma once

#include <vector>

#include "hgpade/arith.hpp"
#include "hgpade/polynomial.hpp"

namespace hgpade {

/// Truncated Laurent series in 1/z:  sum_{e = order}^{truncation-1} c_e / z^e.
/// Negative exponents are positive powers of z. Every exponent below
/// `truncation` is known exactly; nothing at or above it is.
class LaurentTail {
 public:
  LaurentTail() = default;
  /// coeffs[j] is the coefficient of 1/z^(low + j); entries at exponents
  /// >= truncation are dropped.
  LaurentTail(long low, std::vector<Rational> coeffs, long truncation);

  /// The polynomial P(z) viewed as a series known up to `truncation`.
  static LaurentTail from_polynomial(const RationalPoly& p, long truncation);

  long truncation() const { return truncation_; }
  /// Exponent of the first stored coefficient (meaningless when zero).
  long low() const { return low_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// True when every coefficient below the truncation vanishes.
  bool is_zero_to_truncation() const { return coeffs_.empty(); }

  /// Coefficient of 1/z^e. Throws InsufficientPrecision for e >= truncation.
  Rational coeff(long e) const;

  /// ord_inf: least exponent with nonzero coefficient. Throws
  /// InsufficientPrecision when the tail vanishes up to the truncation.
  long ord() const;

  /// Exact test of ord >= k. Throws InsufficientPrecision when k > truncation.
  bool ord_at_least(long k) const;

  /// Terms with exponent <= 0 as a polynomial in z.
  RationalPoly polynomial_part() const;
  /// Terms with exponent >= 1.
  LaurentTail principal_part() const;

  friend LaurentTail operator+(const LaurentTail& a, const LaurentTail& b);
  friend LaurentTail operator-(const LaurentTail& a, const LaurentTail& b);
  friend LaurentTail operator*(const LaurentTail& a, const LaurentTail& b);

 private:
  void normalize();

  long low_ = 0;
  std::vector<Rational> coeffs_;
  long truncation_ = 0;
};

}  // namespace hgpade
