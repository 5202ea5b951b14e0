#pragma once

#include <string>
#include <vector>

namespace deflag {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant battery run by `deflag check`: gradient/divergence
/// duality, oracle jump residuals, quiescent steady state, contact
/// preservation and per-step energy conservation on a short benchmark run.
std::vector<CheckResult> run_self_checks(unsigned seed = 12345);

}  // namespace deflag
