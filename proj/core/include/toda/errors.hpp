#pragma once

#include <stdexcept>
#include <string>

namespace toda {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// The sign of a quantity could not be certified at the maximum precision.
class AmbiguousSign : public Error {
 public:
  using Error::Error;
};

class NegativeRadicand : public Error {
 public:
  using Error::Error;
};

class ClosureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Adaptive step size fell below the representable minimum.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// A log-density left the exponent range; the solution is not continuable.
class Overflow : public Error {
 public:
  Overflow(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace toda
