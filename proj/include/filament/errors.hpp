#pragma once

#include <stdexcept>
#include <string>

namespace filament {

/// Invalid arguments or violated preconditions supplied by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Implicit-midpoint fixed point did not converge.
class StepFailure : public NumericalError {
 public:
  StepFailure(double time, int iterations, double residual);

  double time() const noexcept { return time_; }
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  double time_;
  int iterations_;
  double residual_;
};

/// Newton solve for the constraint projection did not converge.
class ProjectionFailure : public NumericalError {
 public:
  ProjectionFailure(const std::string& what, double residual);

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace filament
