#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace maxrange {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the physical or mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid aircraft or mission configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The integrator could not continue. Carries the last accepted state.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_x, std::vector<double> last_state)
      : Error(what), last_x_(last_x), last_state_(std::move(last_state)) {}

  double last_x() const noexcept { return last_x_; }
  const std::vector<double>& last_state() const noexcept { return last_state_; }

 private:
  double last_x_;
  std::vector<double> last_state_;
};

/// A trajectory phase could not be built. `phase()` names the offending phase.
class PlanningError : public Error {
 public:
  PlanningError(std::string phase, const std::string& what)
      : Error(phase + ": " + what), phase_(std::move(phase)) {}

  const std::string& phase() const noexcept { return phase_; }

 private:
  std::string phase_;
};

}  // namespace maxrange
