#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hgpade/polynomial.hpp"

namespace hgpade {

struct HypothesisFlags {
  bool ab = true;                     // no eta_i, zeta_j in {0, -1, -2, ...}
  bool a_not_positive_integer = true;  // a_k not in Z_{>0}
  bool a_shift_b_not_positive_integer = true;  // a_k + 1 - b_j not in Z_{>0}
  bool eta_zeta_not_positive_integer = true;   // eta_i - zeta_j not in Z_{>0}
  std::vector<std::string> violations;

  bool all() const {
    return ab && a_not_positive_integer && a_shift_b_not_positive_integer && eta_zeta_not_positive_integer;
  }
};

/// Instance data: A(X) = prod (X + eta_i), B(X) = prod (X + zeta_j) and the
/// sequence c_{k+1} = c_k A(k) / B(k+1).
class HypergeometricSpec {
 public:
  /// eta = a + 1, zeta = (b_1, ..., b_{r-1}, 1). Default c0 = prod a / prod b.
  /// Throws HypothesisViolation if (AB) fails or the sizes mismatch.
  static HypergeometricSpec from_hypergeometric(std::vector<Rational> a, std::vector<Rational> b,
                                                std::optional<Rational> c0 = std::nullopt);
  /// General roots; r = eta.size() = zeta.size().
  static HypergeometricSpec from_roots(std::vector<Rational> eta, std::vector<Rational> zeta, Rational c0);

  std::size_t r() const { return eta_.size(); }
  const std::vector<Rational>& eta() const { return eta_; }
  const std::vector<Rational>& zeta() const { return zeta_; }
  /// a_i = eta_i - 1.
  std::vector<Rational> a() const;
  /// b_j = zeta_j for j < r.
  std::vector<Rational> b() const;
  /// gamma_s = zeta_{r+1-s}, s = 1..r.
  const Rational& gamma(std::size_t s) const;
  const Rational& c0() const { return c0_; }
  /// True when built from (a, b) with the default c0, so zeta_r = 1 and the
  /// series is a shifted rF_{r-1}.
  bool is_hypergeometric() const { return hypergeometric_; }

  const RationalPoly& A() const { return A_; }
  const RationalPoly& B() const { return B_; }

  Rational c(std::size_t k) const;
  /// c_0 .. c_{count-1}.
  std::vector<Rational> c_sequence(std::size_t count) const;

  HypothesisFlags flags() const;
  /// Throws HypothesisViolation naming the first failed flag.
  void require_all_flags() const;

 private:
  HypergeometricSpec(std::vector<Rational> eta, std::vector<Rational> zeta, Rational c0, bool hypergeometric);
  void extend_to(std::size_t count) const;

  std::vector<Rational> eta_, zeta_;
  Rational c0_;
  bool hypergeometric_ = false;
  RationalPoly A_, B_;

  struct Memo {
    std::mutex mutex;
    std::vector<Rational> c;
  };
  std::shared_ptr<Memo> memo_;
};

}  // namespace hgpade
