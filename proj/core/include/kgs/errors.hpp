#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kgs {

// Bad or unknown input data (vertex ids, file contents, mismatched domains).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric parameter outside its admissible range (l <= 1, s < 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition on otherwise valid data,
// e.g. passing a function that does not vanish on the boundary.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by constructors and loaders; names the invariant that failed so
// the CLI can report it verbatim.
class ValidationError : public InputError {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : InputError(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace kgs
