#include "hgpade/spec.hpp"

#include "hgpade/errors.hpp"

namespace hgpade {

HypergeometricSpec::HypergeometricSpec(std::vector<Rational> eta, std::vector<Rational> zeta, Rational c0,
                                       bool hypergeometric)
    : eta_(std::move(eta)),
      zeta_(std::move(zeta)),
      c0_(std::move(c0)),
      hypergeometric_(hypergeometric),
      A_(RationalPoly::from_shifts(eta_)),
      B_(RationalPoly::from_shifts(zeta_)),
      memo_(std::make_shared<Memo>()) {
  if (eta_.empty() || eta_.size() != zeta_.size()) throw HypothesisViolation("need r >= 1 roots for both A and B");
  if (c0_ == 0) throw HypothesisViolation("c0 must be nonzero");
  auto f = flags();
  if (!f.ab) throw HypothesisViolation("(AB): A(k)B(k) vanishes for some k >= 0");
  memo_->c.push_back(c0_);
}

HypergeometricSpec HypergeometricSpec::from_hypergeometric(std::vector<Rational> a, std::vector<Rational> b,
                                                           std::optional<Rational> c0) {
  if (a.empty() || b.size() + 1 != a.size()) throw HypothesisViolation("need |a| = r >= 1 and |b| = r - 1");
  for (const auto& x : a) {
    if (x == 0) throw HypothesisViolation("a_k must be nonzero");
  }
  std::vector<Rational> eta, zeta(b);
  Rational prod = 1;
  for (const auto& x : a) {
    eta.push_back(x + 1);
    prod *= x;
  }
  for (const auto& y : b) {
    if (y == 0) throw HypothesisViolation("(AB): b_j = 0");
    prod /= y;
  }
  zeta.push_back(1);
  bool default_c0 = !c0 || *c0 == prod;
  return HypergeometricSpec(std::move(eta), std::move(zeta), c0 ? *c0 : prod, default_c0);
}

HypergeometricSpec HypergeometricSpec::from_roots(std::vector<Rational> eta, std::vector<Rational> zeta, Rational c0) {
  return HypergeometricSpec(std::move(eta), std::move(zeta), std::move(c0), false);
}

std::vector<Rational> HypergeometricSpec::a() const {
  std::vector<Rational> out;
  for (const auto& e : eta_) out.push_back(e - 1);
  return out;
}

std::vector<Rational> HypergeometricSpec::b() const { return {zeta_.begin(), zeta_.end() - 1}; }

const Rational& HypergeometricSpec::gamma(std::size_t s) const {
  if (s < 1 || s > r()) throw std::out_of_range("gamma index");
  return zeta_[r() - s];
}

void HypergeometricSpec::extend_to(std::size_t count) const {
  auto& c = memo_->c;
  while (c.size() < count) {
    const std::size_t k = c.size() - 1;
    c.push_back(c.back() * A_(Rational(k)) / B_(Rational(k + 1)));
  }
}

Rational HypergeometricSpec::c(std::size_t k) const {
  std::lock_guard lock(memo_->mutex);
  extend_to(k + 1);
  return memo_->c[k];
}

std::vector<Rational> HypergeometricSpec::c_sequence(std::size_t count) const {
  std::lock_guard lock(memo_->mutex);
  extend_to(count);
  return {memo_->c.begin(), memo_->c.begin() + static_cast<long>(count)};
}

HypothesisFlags HypergeometricSpec::flags() const {
  HypothesisFlags f;
  for (std::size_t i = 0; i < r(); ++i) {
    if (is_nonpositive_integer(eta_[i])) {
      f.ab = false;
      f.violations.push_back("(AB): eta_" + std::to_string(i + 1) + " = " + to_string(eta_[i]) +
                             " is a non-positive integer");
    }
    if (is_nonpositive_integer(zeta_[i])) {
      f.ab = false;
      f.violations.push_back("(AB): zeta_" + std::to_string(i + 1) + " = " + to_string(zeta_[i]) +
                             " is a non-positive integer");
    }
  }
  for (std::size_t k = 0; k < r(); ++k) {
    const Rational ak = eta_[k] - 1;
    if (is_positive_integer(ak)) {
      f.a_not_positive_integer = false;
      f.violations.push_back("a_k in Z_{>0}: a_" + std::to_string(k + 1) + " = " + to_string(ak));
    }
    for (std::size_t j = 0; j < r(); ++j) {
      const Rational d = eta_[k] - zeta_[j];
      if (!is_positive_integer(d)) continue;
      f.eta_zeta_not_positive_integer = false;
      if (j + 1 < r()) {
        f.a_shift_b_not_positive_integer = false;
        f.violations.push_back("a_k+1-b_j in Z_{>0}: k = " + std::to_string(k + 1) + ", j = " +
                               std::to_string(j + 1) + ", value " + to_string(d));
      } else {
        f.violations.push_back("eta_i-zeta_j in Z_{>0}: i = " + std::to_string(k + 1) + ", j = " +
                               std::to_string(j + 1) + ", value " + to_string(d));
      }
    }
  }
  return f;
}

void HypergeometricSpec::require_all_flags() const {
  auto f = flags();
  if (!f.all()) throw HypothesisViolation(f.violations.front());
}

}  // namespace hgpade
