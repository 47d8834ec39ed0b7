#include "hgpade/operators.hpp"

#include "hgpade/errors.hpp"

namespace hgpade {

DiagonalOperator::DiagonalOperator(Eigenvalue eigenvalue, std::string description)
    : eigenvalue_(std::move(eigenvalue)), description_(std::move(description)) {}

DiagonalOperator DiagonalOperator::identity() {
  return DiagonalOperator([](std::size_t) { return Rational(1); }, "id");
}

DiagonalOperator DiagonalOperator::theta_plus(const Rational& shift) {
  return DiagonalOperator([shift](std::size_t k) -> Rational { return Rational(k) + shift; }, "theta+" + to_string(shift));
}

DiagonalOperator DiagonalOperator::polynomial_in_theta(const RationalPoly& H, const Rational& shift,
                                                       std::string description) {
  if (description.empty()) description = "H(theta+" + to_string(shift) + ")";
  return DiagonalOperator([H, shift](std::size_t k) -> Rational { return H(Rational(k) + shift); }, std::move(description));
}

RationalPoly DiagonalOperator::operator()(const RationalPoly& p) const {
  std::vector<Rational> v(p.coeffs());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) v[k] *= eigenvalue_(k);
  }
  return RationalPoly(std::move(v));
}

DiagonalOperator DiagonalOperator::compose(const DiagonalOperator& other) const {
  auto f = eigenvalue_;
  auto g = other.eigenvalue_;
  return DiagonalOperator([f, g](std::size_t k) -> Rational { return f(k) * g(k); }, description_ + " o " + other.description_);
}

DiagonalOperator DiagonalOperator::inverse() const {
  auto f = eigenvalue_;
  std::string desc = "(" + description_ + ")^-1";
  return DiagonalOperator(
      [f, desc](std::size_t k) -> Rational {
        Rational e = f(k);
        if (e == 0) throw SingularEigenvalue(k, "singular eigenvalue at degree " + std::to_string(k) + " of " + desc);
        return Rational(1) / e;
      },
      desc);
}

RationalPoly apply_H_theta(const RationalPoly& H, const RationalPoly& P, const Rational& shift) {
  return DiagonalOperator::polynomial_in_theta(H, shift)(P);
}

RationalPoly apply_H_theta_inverse(const RationalPoly& H, const RationalPoly& P, const Rational& shift) {
  return DiagonalOperator::polynomial_in_theta(H, shift).inverse()(P);
}

}  // namespace hgpade
