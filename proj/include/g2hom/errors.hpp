#pragma once

#include <stdexcept>
#include <string>

namespace g2hom {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different parameter contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Ambient dimension, degree or arity does not fit the operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (rationals, polynomials, forms, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally well-formed input that violates a mathematical precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Case id not present in the bundled catalog.
class UnknownCase : public Error {
 public:
  using Error::Error;
};

}  // namespace g2hom
