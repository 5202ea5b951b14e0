#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deflag {

/// Invalid or inconsistent user configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A thermodynamic state outside the admissible set (e.g. non-positive density).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure of a linear or nonlinear solve inside a time step.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An accepted step violated one of the invariant gates, or a solve failed.
class StepError : public std::runtime_error {
 public:
  StepError(const std::string& what, std::size_t step, double residual = 0.0)
      : std::runtime_error(what), step_(step), residual_(residual) {}
  std::size_t step() const noexcept { return step_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t step_;
  double residual_;
};

/// The exact-solution construction failed (no bracket, no convergence, no admissible branch).
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deflag
