#pragma once

#include <stdexcept>
#include <string>

namespace mechent {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside the documented domain (negative rates, non-finite values,
/// violated preconditions).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A denominator or linear system that vanishes: singular operating point,
/// singular elimination (K = 0), near-marginal Cramer system.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Refusal to produce a steady state for an unstable drift matrix.
class UnstableError : public Error {
 public:
  using Error::Error;
};

/// Covariance data that violates the uncertainty principle beyond rounding.
class PhysicalityError : public Error {
 public:
  using Error::Error;
};

/// Malformed parameter files, unknown keys, bad axis specs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The optimizer's pre-grid found no stable point.
class NoFeasibleRegionError : public Error {
 public:
  using Error::Error;
};

/// Failed reads/writes; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mechent
