#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// alpha(alpha-1) does not match the centrifugal strength.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPotential : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

/// Exact-rational routine called with a value that has no rational form.
class ModeError : public Error {
 public:
  using Error::Error;
};

class CostGuardError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class SolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace rpm
