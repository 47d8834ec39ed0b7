#include "hgpade/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace hgpade {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  std::string text(s.front() == '+' ? s.substr(1) : s);
  return BigInt(text, 10);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

BigInt pollard_brent(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const BigInt& v) {
      BigInt out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          BigInt d = abs(x - y);
          q = q * d;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_brent(n);
  factor_into(d, out);
  factor_into(BigInt(n / d), out);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  Rational out;
  if (slash == std::string_view::npos) {
    out = Rational(parse_integer(text));
  } else {
    BigInt num = parse_integer(text.substr(0, slash));
    std::string_view dtext = text.substr(slash + 1);
    if (!all_digits(dtext)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    BigInt den(std::string(dtext), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(num, den);
    out.canonicalize();
  }
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& x) { return x.get_str(10); }
std::string to_string(const BigInt& x) { return x.get_str(10); }

double log_abs(const BigInt& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(x.get_num()) - log_abs(x.get_den());
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }
bool is_nonpositive_integer(const Rational& x) { return is_integer(x) && x <= 0; }
bool is_positive_integer(const Rational& x) { return is_integer(x) && x > 0; }

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& n) {
  if (n == 0) throw std::invalid_argument("factor: zero");
  BigInt m = abs(n);
  std::map<BigInt, unsigned> found;
  for (unsigned long p = 2; p < 1u << 16; p += (p == 2 ? 1 : 2)) {
    if (BigInt(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++found[BigInt(p)];
      m /= p;
    }
  }
  factor_into(m, found);
  return {found.begin(), found.end()};
}

Place Place::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("place: " + std::to_string(p) + " is not a prime");
  return Place(Kind::prime, p);
}

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "archimedean") return archimedean();
  if (!all_digits(text)) throw std::invalid_argument("place: expected 'inf' or a prime, got '" + std::string(text) + "'");
  return prime(std::stoull(std::string(text)));
}

std::string Place::to_string() const { return is_archimedean() ? "inf" : std::to_string(p_); }

long valuation(const BigInt& x, std::uint64_t p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  BigInt pp(static_cast<unsigned long>(p));
  BigInt rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rational& x, std::uint64_t p) { return valuation(x.get_num(), p) - valuation(x.get_den(), p); }

long valuation(const Rational& x, const BigInt& p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  BigInt rest;
  long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

double log_abs_at_place(const Rational& x, const Place& v) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  if (v.is_archimedean()) return log_abs(x);
  return -static_cast<double>(valuation(x, v.p())) * std::log(static_cast<double>(v.p()));
}

double abs_at_place(const Rational& x, const Place& v) {
  if (x == 0) return 0.0;
  if (v.is_archimedean()) return std::fabs(x.get_d());
  return std::pow(static_cast<double>(v.p()), -static_cast<double>(valuation(x, v.p())));
}

Rational pochhammer(const Rational& a, unsigned k) {
  Rational out = 1;
  for (unsigned j = 0; j < k; ++j) out *= a + j;
  return out;
}

BigInt den_of_set(std::span<const Rational> values) {
  if (values.empty()) throw std::invalid_argument("den_of_set: empty set");
  BigInt out = 1;
  for (const auto& x : values) mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), x.get_den_mpz_t());
  return out;
}

double log_mu(const Rational& x) {
  double out = 0.0;
  if (x.get_den() == 1) return 0.0;
  for (const auto& [q, e] : factor(x.get_den())) {
    (void)e;
    double qd = q.get_d();
    out += qd / (qd - 1.0) * std::log(qd);
  }
  return out;
}

std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("totient: n must be >= 1");
  std::uint64_t result = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

DenominatorProfile profile_from_terms(const std::vector<Rational>& terms) {
  DenominatorProfile out;
  out.N = static_cast<unsigned>(terms.size() - 1);
  BigInt running = 1;
  for (const auto& x : terms) {
    mpz_lcm(running.get_mpz_t(), running.get_mpz_t(), x.get_den_mpz_t());
    out.values.push_back(running);
  }
  out.log_rate = out.N == 0 ? 0.0 : log_abs(out.values.back()) / out.N;
  return out;
}

}  // namespace

DenominatorProfile D_n_profile(const Rational& a, const Rational& b, unsigned N) {
  if (is_nonpositive_integer(b)) throw std::invalid_argument("D_n_profile: b is a non-positive integer");
  std::vector<Rational> terms;
  Rational num = 1, den = 1;
  for (unsigned k = 0; k <= N; ++k) {
    if (k > 0) {
      num *= a + (k - 1);
      den *= b + (k - 1);
    }
    terms.push_back(num / den);
  }
  return profile_from_terms(terms);
}

std::pair<DenominatorProfile, DenominatorProfile> D_c_profiles(std::span<const Rational> eta,
                                                              std::span<const Rational> zeta,
                                                              unsigned N) {
  if (eta.size() != zeta.size()) throw std::invalid_argument("D_c_profiles: eta and zeta differ in length");
  for (const auto& e : eta)
    if (is_nonpositive_integer(e)) throw std::invalid_argument("D_c_profiles: some eta_i is a non-positive integer");
  for (const auto& z : zeta)
    if (is_nonpositive_integer(z + 1)) throw std::invalid_argument("D_c_profiles: some 1+zeta_j is a non-positive integer");
  std::vector<Rational> forward, backward;
  Rational ratio = 1;
  for (unsigned k = 0; k <= N; ++k) {
    if (k > 0) {
      for (std::size_t j = 0; j < eta.size(); ++j) ratio *= (zeta[j] + k) / (eta[j] + (k - 1));
    }
    forward.push_back(ratio);
    backward.push_back(1 / ratio);
  }
  return {profile_from_terms(forward), profile_from_terms(backward)};
}

std::string to_string(MuRounding r) { return r == MuRounding::floor ? "floor" : "ceil"; }

BigInt mu_n(const Rational& zeta, unsigned n, MuRounding rounding) {
  BigInt out = 1;
  if (zeta.get_den() == 1) return out;
  for (const auto& [q, e] : factor(zeta.get_den())) {
    (void)e;
    unsigned long qq = q.get_ui();
    unsigned long extra = n / (qq - 1);
    if (rounding == MuRounding::ceil && n % (qq - 1) != 0) ++extra;
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), n + extra);
    out *= power;
  }
  return out;
}

MuRoundingSelection select_mu_rounding(std::span<const Rational> zetas, unsigned n_max) {
  MuRoundingSelection sel;
  sel.floor_holds = true;
  sel.ceil_holds = true;
  for (const auto& zeta : zetas) {
    Rational ratio = 1;
    for (unsigned n = 0; n <= n_max; ++n) {
      if (n > 0) ratio *= (zeta + n) / n;  // (zeta+1)_n / n!
      const BigInt& d = ratio.get_den();
      for (MuRounding r : {MuRounding::floor, MuRounding::ceil}) {
        BigInt m = mu_n(zeta, n, r);
        if (!mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
          (r == MuRounding::floor ? sel.floor_holds : sel.ceil_holds) = false;
        }
      }
    }
  }
  sel.rounding = sel.floor_holds ? MuRounding::floor : MuRounding::ceil;
  return sel;
}

}  // namespace hgpade
