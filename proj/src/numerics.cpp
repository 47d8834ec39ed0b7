#include "hgpade/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgpade/errors.hpp"
#include "hgpade/functionals.hpp"
#include "hgpade/parallel.hpp"

namespace hgpade {

namespace {

constexpr std::size_t kMaxTerms = 400000;

double log2_of(const Rational& x) { return log_abs(x) / std::log(2.0); }

// Upper bound of |t_{k+1}/t_k| over k >= K for the ratio z prod(k+num)/prod(k+den);
// nullopt while K <= max|den|.
std::optional<Rational> ratio_sup(const Rational& z, const std::vector<Rational>& num,
                                  const std::vector<Rational>& den, std::size_t K) {
  Rational k(static_cast<unsigned long>(K));
  Rational q = abs(z);
  for (std::size_t j = 0; j < den.size(); ++j) {
    Rational lo = k - abs(den[j]);
    if (lo <= 0) return std::nullopt;
    if (j < num.size()) q *= k + abs(num[j]);
    q /= lo;
  }
  return q;
}

Rational ratio_at(const Rational& z, const std::vector<Rational>& num, const std::vector<Rational>& den,
                  std::size_t k) {
  Rational kk(static_cast<unsigned long>(k));
  Rational q = z;
  for (const auto& x : num) q *= kk + x;
  for (const auto& y : den) {
    Rational d = kk + y;
    if (d == 0) throw std::invalid_argument("series denominator vanishes at k = " + std::to_string(k));
    q /= d;
  }
  return q;
}

bool terminates(const std::vector<Rational>& num) {
  return std::any_of(num.begin(), num.end(), [](const Rational& x) { return is_nonpositive_integer(x); });
}

}  // namespace

SeriesValue sum_ratio_series(const RatioSeries& series, unsigned bits) {
  if (series.num.size() > series.den.size()) {
    throw std::invalid_argument("ratio series needs at least as many denominator as numerator factors");
  }
  if (series.num.size() == series.den.size() && abs(series.z) >= 1 && !terminates(series.num)) {
    throw Divergence("series ratio tends to |z| = " + to_string(abs(series.z)) + " >= 1");
  }
  const auto wp = static_cast<mpfr_prec_t>(bits + 96);
  SeriesValue out{Ball(wp), 0, Rational(0)};
  if (series.t0 == 0 || series.z == 0) {
    out.value = Ball(series.t0, wp);
    out.terms = 1;
    return out;
  }
  Ball term(series.t0, wp);
  Ball sum(wp);
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    // term = t_k
    if (mpfr_zero_p(term.mid()) && mpfr_zero_p(term.rad())) {
      out.value = sum;
      out.terms = k;
      return out;
    }
    auto rho = ratio_sup(series.z, series.num, series.den, k);
    if (rho && *rho < 1 && k > 0) {
      double est = term.log2_abs_upper() - std::log2(1.0 - rho->get_d());
      double target = sum.contains_zero() ? -static_cast<double>(bits) - 4
                                          : sum.log2_abs_upper() - static_cast<double>(bits) - 4;
      if (est < target) {
        Rational tail = term.abs_upper_rational() / (1 - *rho);
        sum.add_error(tail);
        out.value = sum;
        out.terms = k;
        out.tail_bound = tail;
        return out;
      }
    }
    sum = sum + term;
    Rational q = ratio_at(series.z, series.num, series.den, k);
    if (q == 0) {
      out.value = sum;
      out.terms = k + 1;
      return out;
    }
    term = term * Ball(q, wp);
  }
  throw InsufficientPrecision("series did not reach the requested precision within " +
                              std::to_string(kMaxTerms) + " terms");
}

Ball eval_pFq(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& z, unsigned bits) {
  if (a.size() > b.size() + 1) throw std::invalid_argument("pFq with p > q + 1 diverges off z = 0");
  for (const auto& x : b) {
    if (is_nonpositive_integer(x)) throw std::invalid_argument("lower parameter " + to_string(x) + " is a pole");
  }
  RatioSeries series{Rational(1), z, a, b};
  series.den.push_back(1);
  if (series.num.size() > series.den.size()) throw std::invalid_argument("too many upper parameters");
  return sum_ratio_series(series, bits).value;
}

namespace {

RatioSeries family_series(const HypergeometricSpec& spec, const Rational& x, std::size_t s) {
  RatioSeries out;
  out.z = x;
  out.num = spec.eta();
  for (const auto& zj : spec.zeta()) out.den.push_back(zj + 1);
  Rational f0 = spec.c0();
  for (std::size_t w = 1; w <= s; ++w) {
    const Rational& g = spec.gamma(w);
    f0 *= g;
    out.num.push_back(g + 1);
    out.den.push_back(g);
  }
  out.t0 = f0 * x;
  return out;
}

Ball closed_form_member(const HypergeometricSpec& spec, const Rational& x, std::size_t s, unsigned bits) {
  const auto a = spec.a();
  const auto b = spec.b();
  const std::size_t r = spec.r();
  const auto wp = static_cast<mpfr_prec_t>(bits + 96);
  if (s == 0) {
    // pFq - 1 cancels about log2(1/|x|) bits
    unsigned extra = x == 0 ? 0u : static_cast<unsigned>(std::max(0.0, -log2_of(x))) + 8;
    return eval_pFq(a, b, x, bits + extra) - Ball(Rational(1), wp + extra);
  }
  std::vector<Rational> up, low;
  Rational scale = x;
  for (const auto& ai : a) {
    up.push_back(ai + 1);
    scale *= ai;
  }
  for (std::size_t j = 0; j + 1 < r; ++j) {
    if (j < r - s) {
      low.push_back(b[j] + 1);
      scale /= b[j];
    } else {
      low.push_back(b[j]);
    }
  }
  return Ball(scale, wp) * eval_pFq(up, low, x, bits);
}

}  // namespace

std::vector<Ball> eval_F_family(const HypergeometricSpec& spec, const Rational& x, unsigned bits,
                                FamilyRoute route) {
  if (route == FamilyRoute::closed_form && !spec.is_hypergeometric()) {
    throw std::invalid_argument("closed-form route needs a hypergeometric instance with the default c0");
  }
  std::vector<Ball> out;
  for (std::size_t s = 0; s < spec.r(); ++s) {
    if (route == FamilyRoute::direct) {
      out.push_back(sum_ratio_series(family_series(spec, x, s), bits).value);
    } else {
      out.push_back(closed_form_member(spec, x, s, bits));
    }
  }
  return out;
}

DualRouteCheck check_F_family(const HypergeometricSpec& spec, const Rational& x, unsigned bits,
                              unsigned tolerance_bits) {
  DualRouteCheck out;
  out.direct = eval_F_family(spec, x, bits, FamilyRoute::direct);
  out.closed_form = eval_F_family(spec, x, bits, FamilyRoute::closed_form);
  out.agree = true;
  out.worst_log2_relative = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < out.direct.size(); ++s) {
    Ball d = out.direct[s] - out.closed_form[s];
    if (out.direct[s].contains_zero()) {
      // only x = 0 gives an exact zero
      bool ok = d.log2_abs_upper() <= -static_cast<double>(tolerance_bits);
      out.agree = out.agree && ok;
      continue;
    }
    double rel = d.log2_abs_upper() - out.direct[s].log_abs_bounds().first / std::log(2.0);
    out.worst_log2_relative = std::max(out.worst_log2_relative, rel);
    if (rel > -static_cast<double>(tolerance_bits)) out.agree = false;
  }
  return out;
}

Ball eval_lerch(const Rational& x, const Rational& z, unsigned power, unsigned bits) {
  if (is_nonpositive_integer(x + 1)) throw std::invalid_argument("Lerch parameter hits a pole");
  RatioSeries series;
  series.z = z;
  Rational base = x + 1, t0 = z;
  for (unsigned j = 0; j < power; ++j) {
    t0 /= base;
    series.num.push_back(x + 1);
    series.den.push_back(x + 2);
  }
  if (power == 0) series.den.push_back(1), series.num.push_back(1);
  series.t0 = t0;
  return sum_ratio_series(series, bits).value;
}

HypergeometricSpec lerch_spec(const Rational& x, std::size_t r) {
  std::vector<Rational> roots(r, x + 1);
  Rational c0 = 1;
  for (std::size_t j = 0; j < r; ++j) c0 /= x + 1;
  return HypergeometricSpec::from_roots(roots, roots, c0);
}

Ball RemainderValue::ball(unsigned bits) const {
  Ball b(partial, static_cast<mpfr_prec_t>(bits));
  b.add_error(tail_bound);
  return b;
}

double RemainderValue::log_abs() const { return hgpade::log_abs(partial); }

namespace {

// Coefficients w_e = f_e alpha^(e+1), grown on demand.
class WeightCache {
 public:
  WeightCache(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s)
      : spec_(spec), alpha_(alpha), s_(s) {}
  const Rational& operator[](std::size_t e) {
    if (e >= w_.size()) w_ = psi_weights(spec_, alpha_, s_, std::max<std::size_t>(2 * e + 16, 64));
    return w_[e];
  }

 private:
  const HypergeometricSpec& spec_;
  Rational alpha_;
  std::size_t s_;
  std::vector<Rational> w_;
};

void f_ratio_factors(const HypergeometricSpec& spec, std::size_t s, std::vector<Rational>& num,
                     std::vector<Rational>& den) {
  num = spec.eta();
  den.clear();
  for (const auto& z : spec.zeta()) den.push_back(z + 1);
  for (std::size_t w = 1; w <= s; ++w) {
    num.push_back(spec.gamma(w) + 1);
    den.push_back(spec.gamma(w));
  }
}

}  // namespace

RemainderValue remainder_value(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                               const RationalPoly& P, const Rational& beta, unsigned rel_bits) {
  if (beta == 0 || abs(alpha) >= abs(beta)) {
    throw Divergence("remainder needs |alpha| < |beta|; got alpha = " + to_string(alpha) +
                     ", beta = " + to_string(beta));
  }
  RemainderValue out;
  if (P.is_zero()) return out;
  const std::size_t d = static_cast<std::size_t>(P.degree());
  std::vector<Rational> num, den;
  f_ratio_factors(spec, s, num, den);
  const Rational x = abs(alpha / beta);
  const Rational scale(BigInt(1), BigInt(1) << rel_bits);
  const std::size_t cap = d + 64 + 16 * static_cast<std::size_t>(rel_bits);
  WeightCache w(spec, alpha, s);
  Rational inv_beta = Rational(1) / beta;
  Rational beta_pow = inv_beta;  // beta^-(k+1)
  Rational tmp;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    Rational rho = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      const Rational& pj = P.coeffs()[j];
      if (pj == 0) continue;
      mpq_mul(tmp.get_mpq_t(), pj.get_mpq_t(), w[j + k].get_mpq_t());
      rho += tmp;
    }
    out.partial += rho * beta_pow;
    beta_pow *= inv_beta;
    const std::size_t K = k + 1;
    out.terms = K;
    auto q = ratio_sup(x, num, den, K);
    if (!q || *q >= 1) continue;
    Rational T = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      const Rational& pj = P.coeffs()[j];
      if (pj == 0) continue;
      T += abs(pj) * abs(w[j + K]);
    }
    T *= abs(beta_pow);
    Rational tail = T / (1 - *q);
    if (tail == 0) {
      out.tail_bound = 0;
      return out;
    }
    if (out.partial != 0 && tail <= scale * abs(out.partial)) {
      out.tail_bound = tail;
      return out;
    }
    if (out.partial == 0 && K > cap) {
      throw InsufficientPrecision("remainder vanishes up to term " + std::to_string(K));
    }
  }
  throw InsufficientPrecision("remainder tail did not shrink within " + std::to_string(kMaxTerms) + " terms");
}

RemainderValue remainder_value(const PadeSystem& system, std::size_t ell, std::size_t i, std::size_t s,
                               const Rational& beta, unsigned rel_bits) {
  return remainder_value(system.spec, system.alphas.at(i), s, system.P.at(ell), beta, rel_bits);
}

long remainder_valuation(const HypergeometricSpec& spec, const Rational& alpha, std::size_t s,
                         const RationalPoly& P, const Rational& beta, std::uint64_t p) {
  if (alpha == 0 || beta == 0) throw Divergence("p-adic remainder needs nonzero alpha and beta");
  if (P.is_zero()) throw InsufficientPrecision("remainder of the zero polynomial has no valuation");
  const long va = valuation(alpha, p), vb = valuation(beta, p);
  const double delta = static_cast<double>(va - vb);
  if (delta <= 0) {
    throw Divergence("p-adic remainder needs |alpha/beta|_" + std::to_string(p) + " < 1");
  }
  const double lp = std::log(static_cast<double>(p));
  const BigInt pz(static_cast<unsigned long>(p));
  auto p_divides_den = [&](const Rational& x) { return mpz_divisible_p(x.get_den_mpz_t(), pz.get_mpz_t()) != 0; };
  // v_p(f_e) >= C0 + sigma e - sum_j log_p(d_j (|zeta_j| + e + 1))
  double C0 = static_cast<double>(valuation(spec.c0(), p));
  double sigma = 0;
  std::vector<std::pair<double, double>> logs;  // (d_j, |zeta_j|)
  for (const auto& eta : spec.eta()) {
    if (p_divides_den(eta)) sigma += static_cast<double>(valuation(eta, p));
  }
  for (const auto& z : spec.zeta()) {
    if (p_divides_den(z)) {
      sigma -= static_cast<double>(valuation(z, p));
    } else {
      sigma -= 1.0 / static_cast<double>(p - 1);
      logs.emplace_back(z.get_den().get_d(), Rational(abs(z)).get_d());
    }
  }
  for (std::size_t w = 1; w <= s; ++w) {
    if (p_divides_den(spec.gamma(w))) C0 += static_cast<double>(valuation(spec.gamma(w), p));
  }
  if (sigma + delta <= 0) {
    throw Divergence("p-adic tail majorant does not shrink: slope " + std::to_string(sigma + delta));
  }
  auto L = [&](double e) {
    double v = C0 + sigma * e;
    for (auto [dj, zj] : logs) v -= std::log(dj * (zj + e + 1)) / lp;
    return v;
  };
  auto slope_at = [&](double e) {
    double v = sigma + delta;
    for (auto [dj, zj] : logs) v -= 1.0 / ((zj + e + 1) * lp);
    return v;
  };
  const std::size_t d = static_cast<std::size_t>(P.degree());
  std::vector<double> vpj(d + 1, 0);
  for (std::size_t j = 0; j <= d; ++j) {
    if (P.coeffs()[j] != 0) vpj[j] = static_cast<double>(valuation(P.coeffs()[j], p));
  }
  WeightCache w(spec, alpha, s);
  Rational S = 0, inv_beta = Rational(1) / beta, beta_pow = inv_beta, tmp;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    Rational rho = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      const Rational& pj = P.coeffs()[j];
      if (pj == 0) continue;
      mpq_mul(tmp.get_mpq_t(), pj.get_mpq_t(), w[j + k].get_mpq_t());
      rho += tmp;
    }
    S += rho * beta_pow;
    beta_pow *= inv_beta;
    const double K = static_cast<double>(k + 1);
    if (S == 0 || slope_at(K) < 0) continue;
    double lb = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= d; ++j) {
      if (P.coeffs()[j] == 0) continue;
      double jj = static_cast<double>(j);
      lb = std::min(lb, vpj[j] + (jj + 1) * static_cast<double>(va) - static_cast<double>(vb) + L(jj + K) +
                            K * delta);
    }
    const long vS = valuation(S, p);
    if (std::ceil(lb - 1e-9) > static_cast<double>(vS)) return vS;
  }
  throw InsufficientPrecision("p-adic remainder valuation not certified within " + std::to_string(kMaxTerms) +
                              " terms");
}

long remainder_valuation(const PadeSystem& system, std::size_t ell, std::size_t i, std::size_t s,
                         const Rational& beta, std::uint64_t p) {
  return remainder_valuation(system.spec, system.alphas.at(i), s, system.P.at(ell), beta, p);
}

IdentityReport check_remainder_identity(const PadeSystem& system, const Rational& beta, unsigned bits) {
  IdentityReport report;
  report.bits = bits;
  const std::size_t r = system.r(), m = system.m();
  for (const auto& a : system.alphas) {
    if (abs(a) >= abs(beta)) throw Divergence("identity check needs |alpha_i| < |beta|");
  }
  std::vector<IdentityEntry> entries;
  for (std::size_t ell = 0; ell <= system.rm(); ++ell) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t s = 0; s < r; ++s) entries.push_back({ell, i, s, 0, 0, false});
    }
  }
  // coarse magnitudes of F to size the working precision
  std::vector<std::vector<Ball>> coarse(m);
  for (std::size_t i = 0; i < m; ++i) coarse[i] = eval_F_family(system.spec, system.alphas[i] / beta, 64);
  parallel_for(entries.size(), [&](std::size_t idx) {
    IdentityEntry& e = entries[idx];
    const Rational Pb = system.P[e.ell](beta);
    const Rational Pisb = system.Pis[e.ell][e.i][e.s](beta);
    RemainderValue R = remainder_value(system, e.ell, e.i, e.s, beta, bits + 16);
    if (R.partial == 0) {
      e.passed = false;
      return;
    }
    e.log2_R = R.log_abs() / std::log(2.0);
    double mag = (Pb == 0 ? 0.0 : log2_of(Pb)) + coarse[e.i][e.s].log2_abs_upper();
    mag = std::max(mag, Pisb == 0 ? 0.0 : log2_of(Pisb));
    const unsigned W = bits + 64 + static_cast<unsigned>(std::max(0.0, mag - e.log2_R));
    Ball F = eval_F_family(system.spec, system.alphas[e.i] / beta, W)[e.s];
    Ball D = Ball(Pb, W) * F - Ball(Pisb, W) - R.ball(W);
    e.log2_residual = D.log2_abs_upper();
    double log2_R_low = R.ball(W).log_abs_bounds().first / std::log(2.0);
    e.passed = e.log2_residual <= log2_R_low - static_cast<double>(bits);
  });
  for (const auto& e : entries) report.passed = report.passed && e.passed;
  report.entries = std::move(entries);
  return report;
}

}  // namespace hgpade
