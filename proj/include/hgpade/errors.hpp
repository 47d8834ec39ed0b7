#pragma once

#include <stdexcept>
#include <string>

namespace hgpade {

/// A query needs terms beyond what a truncated expansion or an error ball
/// can certify.
class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A diagonal operator has a zero eigenvalue on a degree that is needed.
class SingularEigenvalue : public std::domain_error {
 public:
  SingularEigenvalue(std::size_t degree, const std::string& what)
      : std::domain_error(what), degree_(degree) {}
  std::size_t degree() const { return degree_; }

 private:
  std::size_t degree_;
};

/// Input data violates a standing hypothesis; the message names it.
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity the theory certifies nonzero (or an identity it certifies)
/// failed on exact evaluation.
class TheoryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A series does not converge at the requested point.
class Divergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// V - epsilon <= 0: the measure is undefined.
class CriterionNotSatisfied : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgpade
