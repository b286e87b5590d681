#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypertree {

/// Bad caller input: out-of-range labels, malformed triples, negative values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed complex file. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An operation was called on an object that does not satisfy its precondition
/// (e.g. asking for |H_1| of something that is not a 2-tree).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The request exceeds a configured memory or enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floating-point backend failed its exact post-check too many times.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypertree
