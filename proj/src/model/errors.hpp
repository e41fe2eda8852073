#pragma once

#include <stdexcept>
#include <string>

namespace irp {

// Caller broke an operation's precondition (bad frequency, even R, ...).
class ContractError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Input text could not be parsed or has inconsistent dimensions.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// File system failure (missing file, unwritable directory).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Structurally sound input that violates the problem's assumptions.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal invariant does not hold. Always a bug.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace irp
