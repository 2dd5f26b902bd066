#pragma once

#include <stdexcept>
#include <string>

namespace hpm {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the region where the quantity is defined
// (moment strip, existence bound, parameter range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation hit a gamma-function pole that cannot be cancelled.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Iterative scheme ran out of budget before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

// Recurrence pivot vanished; the caller has to seed past it.
class PivotError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpm
