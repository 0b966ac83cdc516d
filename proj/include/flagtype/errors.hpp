#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flagtype {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Singular, non-finite or otherwise undecomposable matrix input.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

// Determinant outside the renormalization guard.
class DeterminantError : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  using Error::Error;
};

class MembershipUndecidable : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class RejectionBudgetExhausted : public Error {
 public:
  using Error::Error;
};

class NoRegularWordFound : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Overflow or loss of finiteness during a long computation.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

// Malformed input text; field() names the offending key or line.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace flagtype
