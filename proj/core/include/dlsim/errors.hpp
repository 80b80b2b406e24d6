#pragma once

#include <stdexcept>
#include <string>

namespace dlsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

/// A problem instance, frequency pair or argument violates its range invariants.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// Raised when a computation is refused because it would exceed a size guard.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

/// Simpson/Richardson refinement did not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}

  double previous_estimate() const { return previous_; }
  double last_estimate() const { return last_; }

 private:
  double previous_;
  double last_;
};

/// Serialized input could not be decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

class MalformedInput : public ParseError {
 public:
  using ParseError::ParseError;
};

class VersionMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

class ChecksumMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace dlsim
