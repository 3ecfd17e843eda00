#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operands belong to different groups or crossed-product contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t budget, std::size_t estimate)
      : Error(what + " (budget " + std::to_string(budget) + ", estimated " +
              std::to_string(estimate) + " elements)"),
        budget_(budget),
        estimate_(estimate) {}

  std::size_t budget() const { return budget_; }
  std::size_t estimate() const { return estimate_; }

 private:
  std::size_t budget_;
  std::size_t estimate_;
};

// Malformed textual input; `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace rdlab
