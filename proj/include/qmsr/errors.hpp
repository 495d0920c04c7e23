#pragma once

#include <stdexcept>
#include <string>

namespace qmsr {

// Bad argument to a library call (node out of range, non-finite value, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A scenario or schedule that is well-formed but violates a model constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario text that could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised mid-simulation when a sub-module breaks its contract
// (delay above bound, envelope growth, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qmsr
