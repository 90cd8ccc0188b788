#pragma once

#include <stdexcept>
#include <string>

namespace blscale {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (eta <= 0, ln Re <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Run metadata or points violate the Run invariants.
class InvalidRunError : public Error {
 public:
  using Error::Error;
};

// Two scaling laws whose exponents coincide within tolerance never cross.
class NoIntersectionError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Fitted prefactor A <= 5/2 or exponent alpha <= 0: no positive ln Re solves the wall law.
class NonphysicalFitError : public Error {
 public:
  using Error::Error;
};

// A fit without an interface cannot produce a wall-region thickness.
class NoInterfaceError : public Error {
 public:
  using Error::Error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace blscale
