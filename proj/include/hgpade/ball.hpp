#pragma once

#include <string>

#include <mpfr.h>

#include "hgpade/arith.hpp"

namespace hgpade {

/// Real interval [mid - rad, mid + rad] with an MPFR midpoint and an upward
/// rounded radius. Every operation keeps the true value inside the ball.
class Ball {
 public:
  explicit Ball(mpfr_prec_t bits = 128);
  Ball(const Rational& x, mpfr_prec_t bits);
  ~Ball();
  Ball(const Ball& o);
  Ball(Ball&& o) noexcept;
  Ball& operator=(const Ball& o);
  Ball& operator=(Ball&& o) noexcept;

  mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
  const __mpfr_struct* mid() const { return mid_; }
  const __mpfr_struct* rad() const { return rad_; }

  /// Widens the radius by a nonnegative rational bound.
  void add_error(const Rational& bound);
  void add_error(const __mpfr_struct* bound);

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  /// Throws InsufficientPrecision when the divisor contains 0.
  friend Ball operator/(const Ball& a, const Ball& b);
  Ball operator-() const;

  bool contains_zero() const;
  bool contains(const Rational& x) const;

  /// Exact rational upper bound of |x| over the ball.
  Rational abs_upper_rational() const;
  /// Upper bound of |x| over the ball.
  double abs_upper() const;
  /// log2 of an upper bound of |x| (-inf for the exact zero ball).
  double log2_abs_upper() const;
  /// log2 of the radius (-inf for an exact ball).
  double log2_radius() const;
  /// Natural log of |x|; throws InsufficientPrecision when the ball meets 0.
  double log_abs() const;
  /// Lower and upper bounds of log|x|.
  std::pair<double, double> log_abs_bounds() const;
  double to_double() const;

  /// Midpoint in decimal with `digits` significant digits.
  std::string mid_string(int digits = 40) const;

 private:
  void round_error(int ternary);
  mpfr_t mid_;
  mpfr_t rad_;
};

}  // namespace hgpade
