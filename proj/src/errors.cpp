#include "filament/errors.hpp"

#include <sstream>

namespace filament {

namespace {

std::string step_failure_message(double time, int iterations, double residual) {
  std::ostringstream os;
  os << "implicit midpoint did not converge at t=" << time << " after " << iterations
     << " iterations (residual " << residual << ")";
  return os.str();
}

}  // namespace

StepFailure::StepFailure(double time, int iterations, double residual)
    : NumericalError(step_failure_message(time, iterations, residual)),
      time_(time),
      iterations_(iterations),
      residual_(residual) {}

ProjectionFailure::ProjectionFailure(const std::string& what, double residual)
    : NumericalError(what), residual_(residual) {}

}  // namespace filament
