#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation requested outside the domain of a function (lower half plane,
/// coordinates outside a stack, nonpositive separation, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A tabulated model was asked for a value it cannot produce directly.
class UnsupportedEvaluation : public Error {
 public:
  using Error::Error;
};

/// A response function is not positive on the imaginary axis, or a model
/// violates its field invariants.
class InvalidMedium : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A multiple-reflection denominator or logarithm argument became
/// nonpositive: the linear-gain model is unstable at this mode.
class RoundTripGainError : public Error {
 public:
  using Error::Error;
};

/// The map w -> w n(iw) is not monotone for the given medium.
class MappingError : public Error {
 public:
  using Error::Error;
};

/// Root bracket does not straddle the target.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Layer index out of range, or a transfer matrix became singular.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this medium class (e.g. bounds on a
/// mixed gain/loss medium).
class ClassificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
