#pragma once

#include <stdexcept>
#include <string>

namespace maxplus {

/// Malformed or inconsistent input: wrong dimensions, unparsable values,
/// violated preconditions on user data.  CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's own contract was broken (an identity that must hold did
/// not, or an operation was used outside its declared backing).  Exit code 3.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A bounded search ran out of budget in an operation that cannot return a
/// partial answer.  Exit code 4.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxplus
