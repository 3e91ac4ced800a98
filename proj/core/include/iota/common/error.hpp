#pragma once

#include <stdexcept>
#include <string>

namespace iota {

// Input outside an operation's domain (bad token parameters, missing main
// element, out-of-screen coordinates, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid experiment or environment configuration. The CLI maps it to exit
// code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not allowed in the current state, e.g. stepping a finished
// episode.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Non-finite values in parameters or gradients.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in a text asset; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace iota
