#pragma once

#include <stdexcept>
#include <string>

namespace feynmot {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad graph, bad dimensions, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or sampling budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A truncated series was asked for information it does not carry.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A closed-form identity that must hold did not (indicates a bug).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace feynmot
