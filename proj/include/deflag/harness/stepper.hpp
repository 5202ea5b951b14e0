#pragma once

#include <cstddef>
#include <vector>

#include "deflag/chemistry.hpp"
#include "deflag/grid.hpp"
#include "deflag/hydro.hpp"
#include "deflag/state.hpp"
#include "deflag/thermo.hpp"

namespace deflag {

struct SchemeConfig {
  ChemStepConfig chemistry;
  CorrectionSolveConfig correction;
  double energy_drift_tol = 1e-8;
};

struct StepDiagnostics {
  std::size_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  double cfl = 0.0;
  double energy = 0.0;
  double energy_drift = 0.0;  // |E^n - E^0| / |E^0|
  double mass = 0.0;
  int newton_iterations = 0;
  double correction_residual = 0.0;
  bool used_fallback = false;
  double internal_energy_residual = 0.0;  // scaled max over cells
  double min_rho = 0.0;
  double min_e_s = 0.0;
  double min_fraction = 0.0;
  double unit_sum_error = 0.0;
  double min_G = 0.0;
  double max_G = 0.0;
  double heat_release = 0.0;  // dt * sum |K| reaction heat, J/m^2
  double compensation = 0.0;  // dt * sum |K| S, J/m^2
};

/// Advances a state with the reactive step followed by the Euler step,
/// checking the invariant gates after each accepted step.
class Simulation {
 public:
  Simulation(StaggeredGrid grid, MixtureSpec spec, SchemeConfig cfg, FieldState initial,
             double dt);

  /// One time step. Throws StepError (with the step index) on solver failure
  /// or a gate violation; the state is left at the last accepted step.
  StepDiagnostics advance();

  const FieldState& state() const noexcept { return state_; }
  const StaggeredGrid& grid() const noexcept { return grid_; }
  const MixtureSpec& spec() const noexcept { return spec_; }
  double dt() const noexcept { return dt_; }
  double initial_energy() const noexcept { return initial_energy_; }
  /// Diagnostics of the initial state (step 0).
  StepDiagnostics initial_diagnostics() const;

 private:
  StepDiagnostics measure(const FieldState& s) const;

  StaggeredGrid grid_;
  MixtureSpec spec_;
  SchemeConfig cfg_;
  FieldState state_;
  double dt_;
  double initial_energy_;
};

}  // namespace deflag
