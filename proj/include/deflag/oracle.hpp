#pragma once

#include "deflag/thermo.hpp"

namespace deflag {

struct GasState {
  double rho = 0.0;
  double p = 0.0;
  double u = 0.0;
  Composition y{};
};

/// Gas at rest (or moving at u) from pressure, temperature and molar fractions.
GasState gas_state_from_pt(const MixtureSpec& spec, double p, double T, const Composition& molar,
                           double u = 0.0);

/// Equilibrium composition of the burnt zone: the identity for G > 1/2,
/// otherwise fuel and oxidant reduced to the excess reactant with the
/// inert fraction kept and the product from the unit sum.
Composition asymptotic_composition(const MixtureSpec& spec, const Composition& y, double G);

struct JumpResiduals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double max() const;
};

/// Jump-condition residuals across a discontinuity moving at `speed`,
/// scaled by the magnitude of the conserved fluxes.
JumpResiduals jump_residuals(const MixtureSpec& spec, const GasState& left, const GasState& right,
                             double speed);

/// Three constant states separated by a reactive discontinuity and a
/// precursor shock, both moving right into the resting unburnt state.
struct WavePattern {
  MixtureSpec spec;
  GasState right;         // unburnt, ahead of the precursor shock
  GasState intermediate;  // unburnt, between the precursor and the flame
  GasState burnt;         // behind the flame
  double precursor_speed = 0.0;
  double reactive_speed = 0.0;
  double flame_speed = 0.0;
  double rho_unburnt = 0.0;   // density on the unburnt side of the flame
  double heat_release = 0.0;  // J/kg of mixture
  JumpResiduals precursor_residual;
  JumpResiduals reactive_residual;
  int iterations = 0;
  bool trivial = false;

  double max_residual() const;
};

/// Root-finding on the jump conditions for the pressure behind the
/// precursor shock. Throws OracleError if no admissible deflagration exists
/// or the iteration fails.
WavePattern solve_deflagration_riemann(const MixtureSpec& spec, const GasState& right,
                                       double u_left, double flame_speed);

struct PointState {
  GasState gas;
  double G = 1.0;
  double e_s = 0.0;
  double h_s = 0.0;
  double T = 0.0;
  double z = 0.0;
};

PointState point_state(const MixtureSpec& spec, const GasState& gas, double G);

/// Self-similar sample at (x, t) for a pattern emanating from x0.
PointState sample_solution(const WavePattern& pattern, double x, double t, double x0);

/// Exact average over [a, b], splitting at the wave positions.
PointState average_solution(const WavePattern& pattern, double a, double b, double t, double x0);

}  // namespace deflag
