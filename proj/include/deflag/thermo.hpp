#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace deflag {

/// Species slots: fuel, oxidant, inert (neutral) gas, product.
enum Species : std::size_t { fuel = 0, oxidant = 1, neutral = 2, product = 3 };
inline constexpr std::size_t n_species = 4;

/// Mass (or molar) fractions indexed by Species.
using Composition = std::array<double, n_species>;

inline constexpr double universal_gas_constant = 8.314462618;  // J/(mol K)

/// One-step irreversible reaction nu_F F + nu_O O + N -> nu_P P + N with a
/// common heat-capacity ratio. Defaults describe stoichiometric hydrogen-air.
struct MixtureSpec {
  double nu_fuel = 2.0;
  double nu_oxidant = 1.0;
  double nu_product = 2.0;
  Composition molar_mass{2.016e-3, 31.998e-3, 28.014e-3, 18.015e-3};  // kg/mol
  Composition formation_enthalpy{0.0, 0.0, 0.0, -13.255e6};          // J/kg
  double gamma = 1.4;

  /// nu_i * W_i for the reacting species, 0 for the inert one.
  double stoich_mass(Species s) const;
  /// Reaction sign: -1 for fuel and oxidant, +1 for product, 0 for inert.
  static double reaction_sign(Species s);

  /// Throws ConfigError on gamma <= 1, non-positive molar masses or
  /// stoichiometric coefficients, or a reaction that does not conserve mass.
  void validate() const;
  /// Non-fatal diagnostics (e.g. an endothermic reaction).
  std::vector<std::string> warnings() const;
};

double pressure_from_state(double gamma, double rho, double e_s);
double pressure_from_enthalpy(double gamma, double rho, double h_s);
double sensible_energy_from_pressure(double gamma, double p, double rho);
double sensible_enthalpy(double gamma, double e_s);

double z_from_fractions(const MixtureSpec& spec, double y_fuel, double y_oxidant);
double y_oxidant_from_z(const MixtureSpec& spec, double y_fuel, double z);

/// nu_F W_F dh_F + nu_O W_O dh_O - nu_P W_P dh_P, the heat released per
/// mole of reaction (positive for an exothermic reaction).
double reaction_heat_coefficient(const MixtureSpec& spec);

/// R * sum_i y_i / W_i.
double mixture_gas_constant(const MixtureSpec& spec, const Composition& y);
/// (gamma - 1) e_s / R_mix.
double temperature(const MixtureSpec& spec, double e_s, double r_mix);
/// sum_i dh_i y_i.
double chemical_energy(const MixtureSpec& spec, const Composition& y);

Composition mass_fractions_from_molar(const MixtureSpec& spec, const Composition& x);

}  // namespace deflag
