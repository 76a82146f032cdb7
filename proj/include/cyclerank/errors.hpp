#pragma once

#include <stdexcept>
#include <string>

namespace cyclerank {

// Error categories map one-to-one onto CLI exit codes (see tools/cyclerank.cpp).

/// Malformed input, out-of-range indices, violated argument preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value was well-formed but outside the domain an operation is defined on
/// (e.g. a non-bideterministic automaton passed to star_height_bidet).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance too large for an exponential algorithm, or a memory/size cap hit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cyclerank
