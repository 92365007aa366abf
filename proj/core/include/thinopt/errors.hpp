#pragma once

#include <stdexcept>

namespace thinopt {

// An argument lies outside the mathematical domain of an operation
// (e.g. a mark outside [0, K]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A caller broke a documented precondition (invalid action indices,
// a pattern that violates the hard core, malformed parameters).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed external input: CSV rows, config files, policy strings.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal guarantee failed. Always a bug, never user error.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace thinopt
