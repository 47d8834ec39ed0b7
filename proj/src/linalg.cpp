#include "hgpade/linalg.hpp"

#include <stdexcept>
#include <unordered_map>

namespace hgpade {

namespace {

void require_square(std::size_t rows, const auto& M) {
  for (const auto& row : M) {
    if (row.size() != rows) throw std::invalid_argument("matrix is not square");
  }
}

}  // namespace

Rational determinant(const RationalMatrix& M) {
  const std::size_t n = M.size();
  require_square(n, M);
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (const auto& x : M[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M[i][j].get_num() * (l / M[i][j].get_den());
    scale *= l;
  }
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  Rational d(a[n - 1][n - 1] * sign);
  return d / scale;
}

namespace {

// Reduced row echelon form in place, pivoting only among the first `columns`
// columns; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& a, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    Rational inv = Rational(1) / a[row][col];
    for (std::size_t j = col; j < a[row].size(); ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RationalMatrix& M) {
  if (M.empty()) return 0;
  RationalMatrix a = M;
  return rref(a, M.front().size()).size();
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& M, std::size_t columns) {
  RationalMatrix a = M;
  for (auto& row : a) {
    if (row.size() != columns) throw std::invalid_argument("row length differs from column count");
  }
  auto pivots = rref(a, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(columns);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& M, const std::vector<Rational>& b) {
  const std::size_t n = M.size();
  require_square(n, M);
  if (b.size() != n) throw std::invalid_argument("right-hand side has the wrong length");
  RationalMatrix a = M;
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a, n);
  if (pivots.size() != n) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

RationalPoly determinant(const PolyMatrix& M) {
  const std::size_t n = M.size();
  require_square(n, M);
  if (n == 0) return RationalPoly::constant(1);
  if (n > 20) throw std::invalid_argument("Laplace expansion limited to 20 rows");
  // memo[mask] = det of rows in mask against the last popcount(mask) columns
  std::unordered_map<std::uint32_t, RationalPoly> memo;
  auto solve = [&](auto&& self, std::uint32_t mask) -> RationalPoly {
    const int size = __builtin_popcount(mask);
    if (size == 0) return RationalPoly::constant(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t col = n - static_cast<std::size_t>(size);
    RationalPoly acc;
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (!M[i][col].is_zero()) {
        RationalPoly term = M[i][col] * self(self, mask & ~(1u << i));
        if (sign > 0) acc += term; else acc -= term;
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return solve(solve, (n == 32 ? 0u : (1u << n)) - 1u);
}

RationalPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolation needs matching sizes");
  // Newton divided differences
  const std::size_t n = xs.size();
  std::vector<Rational> d(ys);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      Rational dx = xs[i] - xs[i - j];
      if (dx == 0) throw std::invalid_argument("interpolation nodes must be distinct");
      d[i] = (d[i] - d[i - 1]) / dx;
      if (i == j) break;
    }
  }
  RationalPoly p;
  for (std::size_t k = n; k-- > 0;) {
    p = p * RationalPoly{-xs[k], Rational(1)};
    p += RationalPoly::constant(d[k]);
  }
  return p;
}

}  // namespace hgpade
