// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace survivordim {

// An argument fell outside its documented range.
class RangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An operation was applied to an object outside its domain
// (non-diagonal matrix where a diagonal one is required, and so on).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; the message carries file/line context when known.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Structurally well-formed input violating a semantic constraint.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured enumeration budget.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Two internal computation routes disagreed; indicates a bug or a bad root.
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An iterative solver failed to reach tolerance; carries the last
// certified bracket for the quantity being computed.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& msg, double bracket_lo, double bracket_hi)
      : std::runtime_error(msg), lo_(bracket_lo), hi_(bracket_hi) {}
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

private:
  double lo_;
  double hi_;
};

}  // namespace survivordim
