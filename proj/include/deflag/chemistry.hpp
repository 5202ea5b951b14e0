#pragma once

#include <span>
#include <string>
#include <vector>

#include "deflag/grid.hpp"
#include "deflag/state.hpp"
#include "deflag/thermo.hpp"
#include "deflag/transport.hpp"

namespace deflag {

/// implicit_upwind: convected values at the end of the step, upwind faces.
/// explicit_limited: convected values at the start of the step, faces from the limiter.
enum class TimeMode { implicit_upwind, explicit_limited };

std::string to_string(TimeMode mode);
TimeMode parse_time_mode(const std::string& text);

struct ChemStepConfig {
  double epsilon = 1e-6;              // relaxation time, s
  double flame_speed_product = 0.0;   // rho_u * u_f, kg/(m^2 s)
  TimeMode time_mode = TimeMode::implicit_upwind;
  LimiterParams limiter;
  bool reaction_enabled = true;

  void validate() const;
};

/// Cut-off eta: y_F/(nu_F W_F) if z <= 0, else y_F/(nu_F W_F) - z.
double reaction_cutoff(const MixtureSpec& spec, double y_fuel, double z);
/// eta * (G - 1/2)^-, in mol/kg; the volumetric rate is rho/epsilon times this.
double reaction_rate(const MixtureSpec& spec, double y_fuel, double z, double G);

/// Per-face flame propagation velocity (rho_u u_f) grad G / |grad G|.
std::vector<double> flame_advection_field(const StaggeredGrid& grid, std::span<const double> G,
                                          double flame_speed_product);

// The advance_* functions read rho_prev, rho and mass_flux from `state`
// (levels n-1, n and the flux linking them) and return level n+1 values.

std::vector<double> advance_G(const StaggeredGrid& grid, const FieldState& state, double dt,
                              const ChemStepConfig& cfg);

std::vector<double> advance_passive(const StaggeredGrid& grid, std::span<const double> y,
                                    const FieldState& state, double dt,
                                    const ChemStepConfig& cfg);

std::vector<double> advance_fuel(const StaggeredGrid& grid, const MixtureSpec& spec,
                                 const FieldState& state, std::span<const double> z_next,
                                 std::span<const double> G_next, double dt,
                                 const ChemStepConfig& cfg);

struct ClosedSpecies {
  std::vector<double> y_oxidant;
  std::vector<double> y_product;
};

/// y_O from z, y_P from the unit sum. Throws StepError if any fraction leaves
/// [-1e-10, 1 + 1e-10].
ClosedSpecies close_species(const MixtureSpec& spec, std::span<const double> y_fuel,
                            std::span<const double> z, std::span<const double> y_neutral);

struct ChemistryResult {
  std::vector<double> G, z, y_fuel, y_oxidant, y_neutral, y_product;
  std::vector<double> rate;           // reaction_rate at the new level, mol/kg
  std::vector<double> reaction_heat;  // volumetric heat release, W/m^3
  std::vector<double> chemical_energy_face;  // sum_i dh_i y_i on each face, J/kg
  double cfl = 0.0;
};

/// The whole reactive step: G, z, y_N, y_F, then closure.
ChemistryResult chemistry_step(const StaggeredGrid& grid, const MixtureSpec& spec,
                               const FieldState& state, double dt, const ChemStepConfig& cfg);

}  // namespace deflag
