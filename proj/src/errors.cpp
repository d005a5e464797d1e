#include "pairfluid/errors.hpp"

#include <sstream>

namespace pairfluid {

namespace {

std::string charge_message(double residual, double tolerance) {
  std::ostringstream os;
  os.precision(17);
  os << "initial densities are not neutral: net charge " << residual
     << " exceeds tolerance " << tolerance;
  return os.str();
}

std::string breakdown_message(const std::string& what, double t, std::size_t cell) {
  std::ostringstream os;
  os.precision(17);
  os << "numerical breakdown at t = " << t << ", cell " << cell << ": " << what;
  return os.str();
}

std::string config_message(const std::string& what, int line) {
  if (line <= 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

} // namespace

ChargeImbalance::ChargeImbalance(double residual, double tolerance)
    : Error(charge_message(residual, tolerance)), residual_(residual) {}

NumericalBreakdown::NumericalBreakdown(const std::string& what, double t, std::size_t cell)
    : Error(breakdown_message(what, t, cell)), t_(t), cell_(cell) {}

ConfigError::ConfigError(const std::string& what, int line)
    : Error(config_message(what, line)), line_(line) {}

} // namespace pairfluid
