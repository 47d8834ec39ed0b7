#pragma once

#include <optional>
#include <vector>

#include "hgpade/polynomial.hpp"

namespace hgpade {

using RationalMatrix = std::vector<std::vector<Rational>>;
using PolyMatrix = std::vector<std::vector<RationalPoly>>;

/// Determinant of a square matrix by fraction-free Bareiss elimination on the
/// row-wise denominator-cleared integer matrix.
Rational determinant(const RationalMatrix& M);

std::size_t rank(const RationalMatrix& M);

/// Basis of {x : M x = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& M, std::size_t columns);

/// Unique solution of M x = b for square nonsingular M; nullopt otherwise.
std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& M, const std::vector<Rational>& b);

/// Determinant of a square polynomial matrix by Laplace expansion along
/// columns, memoized over row subsets.
RationalPoly determinant(const PolyMatrix& M);

/// Unique polynomial of degree < xs.size() through (xs[i], ys[i]).
RationalPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace hgpade
