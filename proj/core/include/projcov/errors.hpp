#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projcov {

// Every failure the library reports derives from Error, so callers that only
// care about "something went wrong" can catch a single type. The concrete
// subclasses map one-to-one onto the failure modes callers branch on.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Matrix failed the scale-invariant positive-definiteness test.
class NotPositiveDefinite : public Error {
public:
  using Error::Error;
};

class NotSymmetric : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Random draw with (numerically) zero norm, twice in a row.
class DegenerateDraw : public Error {
public:
  using Error::Error;
};

class MissingArgument : public Error {
public:
  using Error::Error;
};

/// Too few observations for the requested test.
class DegenerateInput : public Error {
public:
  using Error::Error;
};

/// Sample covariance is singular (p >= n); the classical LRT is undefined.
class SingularCovariance : public Error {
public:
  using Error::Error;
};

/// A projected sample variance is exactly zero, so the log variance ratio is undefined.
class DegenerateProjection : public Error {
public:
  using Error::Error;
};

/// Wraps the first failing replicate of a Monte Carlo study.
class StudyError : public Error {
public:
  StudyError(std::size_t replicate, const std::string& what)
      : Error("replicate " + std::to_string(replicate) + ": " + what), replicate_(replicate) {}

  std::size_t replicate() const noexcept { return replicate_; }

private:
  std::size_t replicate_;
};

}  // namespace projcov
