#pragma once

#include <stdexcept>
#include <string>

namespace nlqm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter combination for which the requested equation branch was not
/// derived (e.g. the Levinson-Smith form at b + mu = 0).
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where a coefficient of the equation is singular.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Closed-form solution evaluated at a pole.
class PoleError : public SingularityError {
 public:
  using SingularityError::SingularityError;
};

/// Radicand of a level-surface integrand is non-positive inside the interval.
class TurningPointError : public SingularityError {
 public:
  using SingularityError::SingularityError;
};

/// Iterative algorithm failed to converge inside its iteration cap. Indicates
/// a bug rather than bad input.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlqm
