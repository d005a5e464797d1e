#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pairfluid {

// Base of every error thrown by the library. The CLI maps the subclasses
// onto distinct exit statuses.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

class InvalidState : public Error {
public:
  using Error::Error;
};

// Net charge of the initial densities does not vanish, so the periodic
// Gauss law has no solution.
class ChargeImbalance : public Error {
public:
  ChargeImbalance(double residual, double tolerance);
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Non-finite value or non-positive density detected while stepping.
class NumericalBreakdown : public Error {
public:
  NumericalBreakdown(const std::string& what, double t, std::size_t cell);
  double time() const noexcept { return t_; }
  std::size_t cell() const noexcept { return cell_; }

private:
  double t_;
  std::size_t cell_;
};

class ConfigError : public Error {
public:
  // line == 0 means the error is not tied to a particular line.
  ConfigError(const std::string& what, int line = 0);
  int line() const noexcept { return line_; }

private:
  int line_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace pairfluid
