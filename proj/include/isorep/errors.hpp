#pragma once

#include <stdexcept>
#include <string>

namespace isorep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (invalid family, bad truncation, ...).
/// `path` names the offending field when the input came from a config file.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::string path = {})
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A computed object fails an identity it must satisfy (e.g. a cocycle evaluation
/// that depends on the lattice path).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace isorep
