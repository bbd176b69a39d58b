/*
 * errors.hpp -- exception types shared across the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace confheat {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke a documented contract (e.g. asked a symbolic mirror for a number).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A value is not representable in double; carries ln|value|.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, double log_magnitude)
      : std::overflow_error(what + " (ln|value| = " + std::to_string(log_magnitude) + ")"),
        log_magnitude_(log_magnitude) {}
  double log_magnitude() const { return log_magnitude_; }

 private:
  double log_magnitude_;
};

/// Adaptive quadrature ran out of budget before reaching its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Multipole sum did not settle below the cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

/// A Green's-function provider failed at a particular frequency.
class ProviderError : public std::runtime_error {
 public:
  ProviderError(const std::string& what, double omega)
      : std::runtime_error(what + " at omega = " + std::to_string(omega) + " rad/s"),
        omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

/// An oracle declined to run because its expansion cannot converge.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace confheat
