#pragma once

#include <stdexcept>

namespace kumdeg {

/// Malformed or mutually inconsistent arguments (mismatched d, wrong shape).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input outside the range where an operation is defined (e.g. m < 36).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kumdeg
