#include "hgpade/ball.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hgpade/errors.hpp"

namespace hgpade {

namespace {

constexpr mpfr_prec_t kRadiusBits = 64;

// r += |x| rounded up
void add_abs_up(mpfr_t r, const __mpfr_struct* x) {
  mpfr_t t;
  mpfr_init2(t, kRadiusBits);
  mpfr_abs(t, x, MPFR_RNDU);
  mpfr_add(r, r, t, MPFR_RNDU);
  mpfr_clear(t);
}

}  // namespace

Ball::Ball(mpfr_prec_t bits) {
  mpfr_init2(mid_, bits);
  mpfr_init2(rad_, kRadiusBits);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Rational& x, mpfr_prec_t bits) : Ball(bits) {
  round_error(mpfr_set_q(mid_, x.get_mpq_t(), MPFR_RNDN));
}

Ball::~Ball() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

Ball::Ball(const Ball& o) {
  mpfr_init2(mid_, o.precision());
  mpfr_init2(rad_, kRadiusBits);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept : Ball(o) {}

Ball& Ball::operator=(const Ball& o) {
  if (this == &o) return *this;
  mpfr_set_prec(mid_, o.precision());
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
  return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  return *this;
}

void Ball::round_error(int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid_)) return;
  // one ulp of the rounded midpoint
  mpfr_t ulp;
  mpfr_init2(ulp, kRadiusBits);
  mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(mid_) - precision(), MPFR_RNDU);
  mpfr_add(rad_, rad_, ulp, MPFR_RNDU);
  mpfr_clear(ulp);
}

void Ball::add_error(const Rational& bound) {
  mpfr_t t;
  mpfr_init2(t, kRadiusBits);
  Rational b = abs(bound);
  mpfr_set_q(t, b.get_mpq_t(), MPFR_RNDU);
  mpfr_add(rad_, rad_, t, MPFR_RNDU);
  mpfr_clear(t);
}

void Ball::add_error(const __mpfr_struct* bound) { add_abs_up(rad_, bound); }

Ball operator+(const Ball& a, const Ball& b) {
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_add(out.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(out.rad_, a.rad_, b.rad_, MPFR_RNDU);
  out.round_error(t);
  return out;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_sub(out.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(out.rad_, a.rad_, b.rad_, MPFR_RNDU);
  out.round_error(t);
  return out;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_mul(out.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_t x, y;
  mpfr_inits2(kRadiusBits, x, y, static_cast<mpfr_ptr>(nullptr));
  // |a| rb + |b| ra + ra rb
  mpfr_abs(x, a.mid_, MPFR_RNDU);
  mpfr_mul(x, x, b.rad_, MPFR_RNDU);
  mpfr_abs(y, b.mid_, MPFR_RNDU);
  mpfr_mul(y, y, a.rad_, MPFR_RNDU);
  mpfr_add(x, x, y, MPFR_RNDU);
  mpfr_mul(y, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(out.rad_, x, y, MPFR_RNDU);
  mpfr_clears(x, y, static_cast<mpfr_ptr>(nullptr));
  out.round_error(t);
  return out;
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) throw InsufficientPrecision("division by a ball containing zero");
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_div(out.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_t num, den, q;
  mpfr_inits2(kRadiusBits, num, den, q, static_cast<mpfr_ptr>(nullptr));
  // (ra + |a/b| rb) / (|b| - rb)
  mpfr_abs(q, out.mid_, MPFR_RNDU);
  mpfr_mul(q, q, b.rad_, MPFR_RNDU);
  mpfr_add(num, a.rad_, q, MPFR_RNDU);
  mpfr_abs(den, b.mid_, MPFR_RNDD);
  mpfr_sub(den, den, b.rad_, MPFR_RNDD);
  mpfr_div(out.rad_, num, den, MPFR_RNDU);
  mpfr_clears(num, den, q, static_cast<mpfr_ptr>(nullptr));
  out.round_error(t);
  return out;
}

Ball Ball::operator-() const {
  Ball out(*this);
  mpfr_neg(out.mid_, out.mid_, MPFR_RNDN);
  return out;
}

bool Ball::contains_zero() const {
  mpfr_t a;
  mpfr_init2(a, kRadiusBits);
  mpfr_abs(a, mid_, MPFR_RNDD);
  bool out = mpfr_lessequal_p(a, rad_);
  mpfr_clear(a);
  return out;
}

bool Ball::contains(const Rational& x) const {
  Ball d = *this - Ball(x, precision());
  return d.contains_zero();
}

Rational Ball::abs_upper_rational() const {
  mpfr_t a;
  mpfr_init2(a, precision() + kRadiusBits);
  mpfr_abs(a, mid_, MPFR_RNDU);
  mpfr_add(a, a, rad_, MPFR_RNDU);
  Rational out;
  mpfr_get_q(out.get_mpq_t(), a);
  mpfr_clear(a);
  return out;
}

double Ball::abs_upper() const {
  mpfr_t a;
  mpfr_init2(a, kRadiusBits);
  mpfr_abs(a, mid_, MPFR_RNDU);
  mpfr_add(a, a, rad_, MPFR_RNDU);
  double out = mpfr_get_d(a, MPFR_RNDU);
  mpfr_clear(a);
  return out;
}

double Ball::log2_abs_upper() const {
  mpfr_t a;
  mpfr_init2(a, kRadiusBits);
  mpfr_abs(a, mid_, MPFR_RNDU);
  mpfr_add(a, a, rad_, MPFR_RNDU);
  double out = -std::numeric_limits<double>::infinity();
  if (!mpfr_zero_p(a)) {
    long e = 0;
    double d = mpfr_get_d_2exp(&e, a, MPFR_RNDU);
    out = std::log2(d) + static_cast<double>(e);
  }
  mpfr_clear(a);
  return out;
}

double Ball::log2_radius() const {
  if (mpfr_zero_p(rad_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double d = mpfr_get_d_2exp(&e, rad_, MPFR_RNDU);
  return std::log2(d) + static_cast<double>(e);
}

namespace {

double log_of(const __mpfr_struct* x) {
  long e = 0;
  double d = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

std::pair<double, double> Ball::log_abs_bounds() const {
  if (contains_zero()) throw InsufficientPrecision("log of a ball containing zero");
  mpfr_t lo, hi;
  mpfr_inits2(kRadiusBits, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_abs(lo, mid_, MPFR_RNDD);
  mpfr_sub(lo, lo, rad_, MPFR_RNDD);
  mpfr_abs(hi, mid_, MPFR_RNDU);
  mpfr_add(hi, hi, rad_, MPFR_RNDU);
  auto out = std::make_pair(log_of(lo) - 1e-15, log_of(hi) + 1e-15);
  mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double Ball::log_abs() const {
  if (contains_zero()) throw InsufficientPrecision("log of a ball containing zero");
  return log_of(mid_);
}

double Ball::to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }

std::string Ball::mid_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, mid_);
  return buf.data();
}

}  // namespace hgpade
