#include "deflag/harness/run.hpp"

#include <chrono>

namespace deflag {

RunResult run_prepared(PreparedCase setup, const RunObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  Simulation sim(setup.grid, setup.spec, setup.scheme, setup.state, setup.dt);
  RunResult result{std::move(setup), {}, {}, 0.0};
  result.diagnostics.reserve(result.setup.n_steps + 1);
  result.diagnostics.push_back(sim.initial_diagnostics());
  if (observer) observer(sim, result.diagnostics.back());
  for (std::size_t i = 0; i < result.setup.n_steps; ++i) {
    result.diagnostics.push_back(sim.advance());
    if (observer) observer(sim, result.diagnostics.back());
  }
  result.final_state = sim.state();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunResult run_case(const CaseConfig& cfg, const RunObserver& observer) {
  return run_prepared(prepare_case(cfg), observer);
}

}  // namespace deflag
