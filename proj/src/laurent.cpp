#include "hgpade/laurent.hpp"

#include <algorithm>

#include "hgpade/errors.hpp"

namespace hgpade {

LaurentTail::LaurentTail(long low, std::vector<Rational> coeffs, long truncation)
    : low_(low), coeffs_(std::move(coeffs)), truncation_(truncation) {
  normalize();
}

void LaurentTail::normalize() {
  if (low_ >= truncation_) {
    coeffs_.clear();
  } else if (static_cast<long>(coeffs_.size()) > truncation_ - low_) {
    coeffs_.resize(static_cast<std::size_t>(truncation_ - low_));
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    low_ = truncation_;
    return;
  }
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
  low_ += static_cast<long>(lead);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

LaurentTail LaurentTail::from_polynomial(const RationalPoly& p, long truncation) {
  if (p.is_zero()) return LaurentTail(truncation, {}, truncation);
  std::vector<Rational> v(p.coeffs().rbegin(), p.coeffs().rend());
  return LaurentTail(-p.degree(), std::move(v), truncation);
}

Rational LaurentTail::coeff(long e) const {
  if (e >= truncation_) {
    throw InsufficientPrecision("coefficient of 1/z^" + std::to_string(e) + " lies at or beyond the truncation " +
                                std::to_string(truncation_));
  }
  if (coeffs_.empty() || e < low_) return 0;
  auto idx = static_cast<std::size_t>(e - low_);
  return idx < coeffs_.size() ? coeffs_[idx] : Rational(0);
}

long LaurentTail::ord() const {
  if (coeffs_.empty()) {
    throw InsufficientPrecision("tail vanishes up to the truncation " + std::to_string(truncation_) +
                                "; ord_inf is not determined");
  }
  return low_;
}

bool LaurentTail::ord_at_least(long k) const {
  if (k > truncation_) {
    throw InsufficientPrecision("ord >= " + std::to_string(k) + " needs terms beyond the truncation " +
                                std::to_string(truncation_));
  }
  return coeffs_.empty() || low_ >= k;
}

RationalPoly LaurentTail::polynomial_part() const {
  if (truncation_ <= 0) throw InsufficientPrecision("polynomial part needs truncation > 0");
  if (coeffs_.empty() || low_ > 0) return {};
  std::vector<Rational> v(static_cast<std::size_t>(-low_ + 1));
  for (long e = low_; e <= 0; ++e) v[static_cast<std::size_t>(-e)] = coeff(e);
  return RationalPoly(std::move(v));
}

LaurentTail LaurentTail::principal_part() const {
  if (coeffs_.empty() || low_ >= 1) return *this;
  std::vector<Rational> v;
  for (long e = 1; e < low_ + static_cast<long>(coeffs_.size()); ++e) v.push_back(coeff(e));
  return LaurentTail(1, std::move(v), truncation_);
}

namespace {

LaurentTail add_impl(const LaurentTail& a, const LaurentTail& b, bool subtract) {
  long trunc = std::min(a.truncation(), b.truncation());
  long low = trunc;
  if (!a.is_zero_to_truncation()) low = std::min(low, a.low());
  if (!b.is_zero_to_truncation()) low = std::min(low, b.low());
  if (low >= trunc) return LaurentTail(trunc, {}, trunc);
  std::vector<Rational> v(static_cast<std::size_t>(trunc - low));
  for (long e = low; e < trunc; ++e) {
    Rational x = a.coeff(e);
    if (subtract) x -= b.coeff(e); else x += b.coeff(e);
    v[static_cast<std::size_t>(e - low)] = x;
  }
  return LaurentTail(low, std::move(v), trunc);
}

}  // namespace

LaurentTail operator+(const LaurentTail& a, const LaurentTail& b) { return add_impl(a, b, false); }
LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) { return add_impl(a, b, true); }

LaurentTail operator*(const LaurentTail& a, const LaurentTail& b) {
  const long a_low = a.is_zero_to_truncation() ? a.truncation() : a.low();
  const long b_low = b.is_zero_to_truncation() ? b.truncation() : b.low();
  const long trunc = std::min(a.truncation() + b_low, b.truncation() + a_low);
  if (a.is_zero_to_truncation() || b.is_zero_to_truncation()) return LaurentTail(trunc, {}, trunc);
  const long low = a_low + b_low;
  if (low >= trunc) return LaurentTail(trunc, {}, trunc);
  std::vector<Rational> v(static_cast<std::size_t>(trunc - low));
  Rational tmp;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      std::size_t idx = i + j;
      if (idx >= v.size()) break;
      mpq_mul(tmp.get_mpq_t(), a.coeffs()[i].get_mpq_t(), b.coeffs()[j].get_mpq_t());
      v[idx] += tmp;
    }
  }
  return LaurentTail(low, std::move(v), trunc);
}

}  // namespace hgpade
