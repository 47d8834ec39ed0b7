#pragma once

// Exact rational and number-theoretic primitives shared by every module.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hgpade {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "num/den" or "num" (optional sign, decimal digits). Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text, denominator omitted when 1.
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

std::vector<Rational> parse_rational_list(std::string_view text);

/// Natural logarithm of |x| for arbitrarily large integers; -inf for 0.
double log_abs(const BigInt& x);
double log_abs(const Rational& x);

bool is_integer(const Rational& x);
/// True for 0, -1, -2, ...
bool is_nonpositive_integer(const Rational& x);
/// True for 1, 2, 3, ...
bool is_positive_integer(const Rational& x);

/// Deterministic primality for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Prime factorization (prime, exponent), primes ascending. |n| >= 1.
std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& n);

class Place {
 public:
  enum class Kind { archimedean, prime };

  static Place archimedean() { return Place(Kind::archimedean, 0); }
  /// Throws std::invalid_argument unless p is a prime.
  static Place prime(std::uint64_t p);
  /// "inf" or a decimal prime.
  static Place parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_archimedean() const { return kind_ == Kind::archimedean; }
  std::uint64_t p() const { return p_; }
  std::string to_string() const;

  friend bool operator==(const Place&, const Place&) = default;

 private:
  Place(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// p-adic valuation; x must be nonzero.
long valuation(const BigInt& x, std::uint64_t p);
long valuation(const Rational& x, std::uint64_t p);
long valuation(const Rational& x, const BigInt& p);

/// Normalized absolute value |x|_v (0 at x = 0).
double abs_at_place(const Rational& x, const Place& v);
/// log |x|_v, -inf at x = 0. Safe for values far outside double range.
double log_abs_at_place(const Rational& x, const Place& v);

/// (a)_k = a(a+1)...(a+k-1).
Rational pochhammer(const Rational& a, unsigned k);

/// Least n >= 1 with n*x integral for all x in S (lcm of denominators).
BigInt den_of_set(std::span<const Rational> values);

/// Sum over primes q | den(x) of (q/(q-1)) log q.
double log_mu(const Rational& x);

std::uint64_t totient(std::uint64_t n);

struct DenominatorProfile {
  unsigned N = 0;
  std::vector<BigInt> values;  // D_0 .. D_N
  double log_rate = 0.0;       // (1/N) log D_N, 0 when N == 0
};

/// D_k = den{(a)_j/(b)_j : j <= k}. Throws if b is a non-positive integer.
DenominatorProfile D_n_profile(const Rational& a, const Rational& b, unsigned N);

/// Denominators of prod(1+zeta_j)_k / prod(eta_j)_k and of the reciprocal
/// family, k <= N.
std::pair<DenominatorProfile, DenominatorProfile> D_c_profiles(std::span<const Rational> eta,
                                                              std::span<const Rational> zeta,
                                                              unsigned N);

enum class MuRounding { floor, ceil };
std::string to_string(MuRounding r);

/// prod_{q | den(zeta)} q^(n + round(n/(q-1))).
BigInt mu_n(const Rational& zeta, unsigned n, MuRounding rounding);

struct MuRoundingSelection {
  MuRounding rounding = MuRounding::floor;
  bool floor_holds = false;
  bool ceil_holds = false;
};

/// Picks the smaller exponent rule for which den((zeta+1)_n/n!) | mu_n(zeta, n)
/// holds for every zeta given and n <= n_max.
MuRoundingSelection select_mu_rounding(std::span<const Rational> zetas, unsigned n_max);

}  // namespace hgpade
