#pragma once

#include <functional>
#include <vector>

#include "deflag/harness/config.hpp"
#include "deflag/harness/initial.hpp"
#include "deflag/harness/stepper.hpp"

namespace deflag {

/// Called with the simulation after every accepted step (and once for the
/// initial state, with step 0).
using RunObserver = std::function<void(const Simulation&, const StepDiagnostics&)>;

struct RunResult {
  PreparedCase setup;  // grid, scheme, initial state, step and pattern
  FieldState final_state;
  std::vector<StepDiagnostics> diagnostics;  // initial state first
  double wall_seconds = 0.0;
};

/// Prepares and advances a case from t_start to t_end. Throws ConfigError,
/// OracleError, or StepError (with the failing step index).
RunResult run_case(const CaseConfig& cfg, const RunObserver& observer = {});

/// Same, starting from an already prepared case.
RunResult run_prepared(PreparedCase setup, const RunObserver& observer = {});

}  // namespace deflag
