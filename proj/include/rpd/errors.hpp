#pragma once

#include <stdexcept>
#include <string>

namespace rpd {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A point configuration with coincident points.
class DegenerateConfiguration : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative method ran out of budget (eigensolver sweeps, search caps).
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Quadrature could not reach the requested tolerance.
class AccuracyFailure : public NumericalFailure {
 public:
  AccuracyFailure(const std::string& what, double best_value, double est_error)
      : NumericalFailure(what, est_error), best_value_(best_value) {}
  double best_value() const noexcept { return best_value_; }
  double est_error() const noexcept { return residual(); }

 private:
  double best_value_;
};

// Kernel/measure combination that an operation cannot handle.
class UnsupportedKernel : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace rpd
