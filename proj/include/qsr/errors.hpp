#pragma once

#include <stdexcept>
#include <string>

namespace qsr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Configuration file failed schema validation. `field()` is the dotted path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NonUniqueSteadyState : public Error {
 public:
  NonUniqueSteadyState(int null_dim, const std::string& what)
      : Error(what), null_dim_(null_dim) {}
  int null_dim() const noexcept { return null_dim_; }

 private:
  int null_dim_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class StepSizeUnstable : public Error {
 public:
  using Error::Error;
};

/// Bisection bracket does not straddle an entanglement boundary.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

}  // namespace qsr
