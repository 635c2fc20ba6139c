#pragma once

#include <stdexcept>
#include <string>

namespace ratectl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the admissible domain (non-positive hours, r <= -1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The equation system has no economically meaningful solution at this rate.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A root-finding bracket does not straddle a sign change.
class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A scenario or config names a parameter that does not exist.
class UnknownPathError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance, scenario, or command-line input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ratectl
