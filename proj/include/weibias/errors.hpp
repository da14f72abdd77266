#pragma once

#include <stdexcept>
#include <string>

namespace weibias {

// Root of every error raised by the library. Callers that only need to
// report failures can catch this; the CLI maps the concrete kinds onto
// exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Estimator precondition not met (too few records, too few events).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the given kind of data.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// The estimating equation has no finite positive root for this data.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what + " (iterations=" + std::to_string(iterations) +
              ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Bias correction larger than the estimate it corrects.
class CorrectionOvershootError : public Error {
 public:
  using Error::Error;
};

}  // namespace weibias
