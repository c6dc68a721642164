#pragma once

#include <stdexcept>
#include <string>

namespace seedgraph {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different ambient variable sets (or semifield ranks).
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Exact division left a nonzero remainder. Never recoverable inside a
/// mutation: it means the Laurent phenomenon was violated or there is a bug.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NotSkewSymmetrizable : public Error {
 public:
  using Error::Error;
};

class BadDirection : public Error {
 public:
  using Error::Error;
};

class NondegenerateRequired : public Error {
 public:
  using Error::Error;
};

/// A seed whose cluster contains a repeated variable.
class DegenerateSeed : public Error {
 public:
  using Error::Error;
};

class ZeroRowUnsupported : public Error {
 public:
  using Error::Error;
};

class NotCompatible : public Error {
 public:
  using Error::Error;
};

class NotSubtractionFree : public Error {
 public:
  using Error::Error;
};

}  // namespace seedgraph
