#pragma once

#include <stdexcept>
#include <string>

namespace htk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A plain double was requested for a quantity whose magnitude does not fit.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Point falls in none of the four asymptotic regions under the given thresholds.
class UnclassifiableError : public Error {
 public:
  using Error::Error;
};

}  // namespace htk
