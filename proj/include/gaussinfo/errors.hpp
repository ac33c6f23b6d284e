#pragma once

#include <stdexcept>
#include <string>

namespace gaussinfo {

/// Base for every failure raised by the library. Callers that only care
/// whether a computation succeeded can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive definite (coupling matrix, covariance
/// matrix, block of one) has an eigenvalue at or below tolerance.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix violates the uncertainty bound nu_k(sigma/hbar) >= 1/2.
class UnphysicalState : public Error {
 public:
  using Error::Error;
};

class InvalidSubsystem : public Error {
 public:
  using Error::Error;
};

class SingularEnvironmentBlock : public Error {
 public:
  using Error::Error;
};

/// Intermediate quantity left its mathematically allowed range by more than
/// round-off can explain.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class DegenerateLevel : public Error {
 public:
  using Error::Error;
};

}  // namespace gaussinfo
