#pragma once

#include <stdexcept>
#include <string>

namespace ppnfifo {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated model invariant. The CLI maps these to exit 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A decision procedure or enumeration ran out of budget. The CLI maps these to exit 3.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public InputError {
 public:
  using InputError::InputError;
};
class MissingParameter : public InputError {
 public:
  using InputError::InputError;
};
class UnknownDimension : public InputError {
 public:
  using InputError::InputError;
};
class ParseError : public InputError {
 public:
  using InputError::InputError;
};
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};
class InvalidTiling : public InputError {
 public:
  using InputError::InputError;
};
class DepthMismatch : public InputError {
 public:
  using InputError::InputError;
};
class DepthOutOfRange : public InputError {
 public:
  using InputError::InputError;
};
class BadScheduleShape : public InputError {
 public:
  using InputError::InputError;
};
class MismatchedReports : public InputError {
 public:
  using InputError::InputError;
};
// A dimension has no finite bound, so points cannot be enumerated.
class Unbounded : public InputError {
 public:
  using InputError::InputError;
};
// Distinct producer and consumer iterations share a global timestamp.
class ScheduleCollision : public InputError {
 public:
  using InputError::InputError;
};
// A read is ordered before the write it consumes.
class CausalityError : public InputError {
 public:
  using InputError::InputError;
};

class UnboundedSearch : public BudgetError {
 public:
  using BudgetError::BudgetError;
};
class BudgetExceeded : public BudgetError {
 public:
  using BudgetError::BudgetError;
};
class ComplexityCap : public BudgetError {
 public:
  using BudgetError::BudgetError;
};

}  // namespace ppnfifo
