#pragma once

#include <stdexcept>
#include <string>

namespace pgz {

// Operands built over incompatible variable tables, arity mismatches and
// similar shape violations.
class StructuralError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// An operation is undefined for the given values (inexact fractional power,
// non-monomial image of a bar variable, non-invertible automorphism).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

class EmptyLanguage : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotComInjective : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgz
