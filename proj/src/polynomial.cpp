#include "hgpade/polynomial.hpp"

#include <stdexcept>

namespace hgpade {

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

RationalPoly::RationalPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { strip(); }

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly(std::vector<Rational>{c}); }

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::linear_power(const Rational& root, unsigned power) {
  // binomial expansion of (x - root)^power
  std::vector<Rational> v(power + 1);
  BigInt binom = 1;
  Rational neg_root_pow = 1;
  for (unsigned k = 0; k <= power; ++k) {
    // coefficient of x^(power-k) is C(power,k) (-root)^k
    v[power - k] = Rational(binom) * neg_root_pow;
    binom = binom * (power - k) / (k + 1);
    neg_root_pow *= -root;
  }
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::from_shifts(std::span<const Rational> shifts) {
  RationalPoly out = constant(1);
  for (const auto& s : shifts) out = out * RationalPoly{s, Rational(1)};
  return out;
}

const Rational& RationalPoly::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

void RationalPoly::set_coeff(std::size_t k, const Rational& c) {
  if (k >= coeffs_.size()) {
    if (c == 0) return;
    coeffs_.resize(k + 1);
  }
  coeffs_[k] = c;
  strip();
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  strip();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  strip();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  Rational tmp;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpq_mul(tmp.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
      v[i + j] += tmp;
    }
  }
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly out = *this;
  for (auto& x : out.coeffs_) x = -x;
  return out;
}

RationalPoly RationalPoly::pow(unsigned e) const {
  RationalPoly result = constant(1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

RationalPoly RationalPoly::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<Rational> v(k + coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + k] = coeffs_[i];
  return RationalPoly(std::move(v));
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size() - 1;
  if (rem.size() <= dd) return {RationalPoly{}, *this};
  std::vector<Rational> quot(rem.size() - dd);
  const Rational& lc = divisor.coeffs_.back();
  for (std::size_t i = rem.size(); i-- > dd;) {
    Rational q = rem[i] / lc;
    quot[i - dd] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= q * divisor.coeffs_[j];
  }
  rem.resize(dd);
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

void RationalPoly::strip() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

}  // namespace hgpade
