#pragma once

#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

#include "hgpade/arith.hpp"

namespace hgpade {

/// Dense univariate polynomial over Q, coefficient k multiplies x^k.
/// Trailing zeros are always stripped.
class RationalPoly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr long kNegInfDegree = std::numeric_limits<long>::min();

  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);
  RationalPoly(std::initializer_list<Rational> coeffs);

  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, std::size_t degree);
  /// (x - root)^power.
  static RationalPoly linear_power(const Rational& root, unsigned power);
  /// prod_i (x + shifts[i]).
  static RationalPoly from_shifts(std::span<const Rational> shifts);

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return coeffs_.empty() ? kNegInfDegree : static_cast<long>(coeffs_.size()) - 1; }
  /// Number of stored coefficients (degree + 1, or 0).
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of x^k; zero beyond the degree.
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const Rational& leading() const;

  void set_coeff(std::size_t k, const Rational& c);

  Rational operator()(const Rational& x) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  RationalPoly operator-() const;
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  RationalPoly pow(unsigned e) const;
  /// Multiply by x^k.
  RationalPoly shifted(std::size_t k) const;

  /// Euclidean division; divisor must be nonzero.
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& divisor) const;
  bool divisible_by(const RationalPoly& divisor) const { return divmod(divisor).second.is_zero(); }

 private:
  void strip();
  std::vector<Rational> coeffs_;
};

}  // namespace hgpade
