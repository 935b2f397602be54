#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace concc {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

// An operation whose domain excludes the identity received it.
class IdentityElement : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " +
              message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Input violates a documented precondition (bad spec, malformed path, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of budget where a definite answer was required.
class BoundExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace concc
