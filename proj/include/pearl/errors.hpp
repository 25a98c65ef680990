#pragma once

#include <stdexcept>
#include <string>

namespace pearl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient rings (different N, or different (p,q)).
class IncompatibleRingError : public Error {
 public:
  using Error::Error;
};

/// N does not divide 2C_M, so Γ does not embed in Λ.
class NotMonotoneCompatibleError : public Error {
 public:
  using Error::Error;
};

/// A disk class or Maslov value that cannot occur (non-positive Maslov, not a multiple of N).
class InvalidClassError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Support or enumeration size exceeds the configured cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

/// The differential has negative t-exponents, so d = ∂₀ + ∂₁t + ... is undefined.
class SplitUndefinedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message),
        location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace pearl
