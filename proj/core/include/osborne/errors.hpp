#pragma once

#include <stdexcept>
#include <string>

namespace osborne {

// Raised when an operation reaches a state the graph structure cannot
// support: zero row/column norms, an unbalanceable index inside a stepper,
// or a run started on a matrix that is not strongly connected.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Scaled weights left the representable range (some e^{x_i - x_j} overflowed).
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// An iteration exceeded its hard safety cap. Carries a state dump in what().
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Input file rejected; line() is 1-based, 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace osborne
