#include "deflag/thermo.hpp"

#include <cmath>

#include "deflag/errors.hpp"

namespace deflag {

double MixtureSpec::stoich_mass(Species s) const {
  switch (s) {
    case fuel: return nu_fuel * molar_mass[fuel];
    case oxidant: return nu_oxidant * molar_mass[oxidant];
    case product: return nu_product * molar_mass[product];
    case neutral: return 0.0;
  }
  return 0.0;
}

double MixtureSpec::reaction_sign(Species s) {
  switch (s) {
    case fuel:
    case oxidant: return -1.0;
    case product: return 1.0;
    case neutral: return 0.0;
  }
  return 0.0;
}

void MixtureSpec::validate() const {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be > 1");
  }
  for (double w : molar_mass) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("molar masses must be positive");
  }
  if (!(nu_fuel > 0.0) || !(nu_oxidant > 0.0) || !(nu_product > 0.0)) {
    throw ConfigError("stoichiometric coefficients must be positive");
  }
  for (double dh : formation_enthalpy) {
    if (!std::isfinite(dh)) throw ConfigError("formation enthalpies must be finite");
  }
  const double reactants = stoich_mass(fuel) + stoich_mass(oxidant);
  const double products = stoich_mass(product);
  if (std::abs(reactants - products) > 1e-12 * std::abs(products)) {
    throw ConfigError("reaction does not conserve mass: nu_F W_F + nu_O W_O != nu_P W_P");
  }
}

std::vector<std::string> MixtureSpec::warnings() const {
  std::vector<std::string> out;
  if (reaction_heat_coefficient(*this) < 0.0) {
    out.emplace_back("endothermic reaction: positivity of the sensible energy is not guaranteed");
  }
  return out;
}

double pressure_from_state(double gamma, double rho, double e_s) {
  if (!(rho > 0.0)) throw StateError("non-positive density in equation of state");
  return (gamma - 1.0) * rho * e_s;
}

double pressure_from_enthalpy(double gamma, double rho, double h_s) {
  if (!(rho > 0.0)) throw StateError("non-positive density in equation of state");
  return (gamma - 1.0) / gamma * rho * h_s;
}

double sensible_energy_from_pressure(double gamma, double p, double rho) {
  if (!(rho > 0.0)) throw StateError("non-positive density in equation of state");
  return p / ((gamma - 1.0) * rho);
}

double sensible_enthalpy(double gamma, double e_s) { return gamma * e_s; }

double z_from_fractions(const MixtureSpec& spec, double y_fuel, double y_oxidant) {
  return y_fuel / spec.stoich_mass(fuel) - y_oxidant / spec.stoich_mass(oxidant);
}

double y_oxidant_from_z(const MixtureSpec& spec, double y_fuel, double z) {
  return spec.stoich_mass(oxidant) * (y_fuel / spec.stoich_mass(fuel) - z);
}

double reaction_heat_coefficient(const MixtureSpec& spec) {
  return spec.stoich_mass(fuel) * spec.formation_enthalpy[fuel] +
         spec.stoich_mass(oxidant) * spec.formation_enthalpy[oxidant] -
         spec.stoich_mass(product) * spec.formation_enthalpy[product];
}

double mixture_gas_constant(const MixtureSpec& spec, const Composition& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n_species; ++i) s += y[i] / spec.molar_mass[i];
  return universal_gas_constant * s;
}

double temperature(const MixtureSpec& spec, double e_s, double r_mix) {
  return (spec.gamma - 1.0) * e_s / r_mix;
}

double chemical_energy(const MixtureSpec& spec, const Composition& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n_species; ++i) s += spec.formation_enthalpy[i] * y[i];
  return s;
}

Composition mass_fractions_from_molar(const MixtureSpec& spec, const Composition& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < n_species; ++i) total += x[i] * spec.molar_mass[i];
  Composition y{};
  for (std::size_t i = 0; i < n_species; ++i) y[i] = x[i] * spec.molar_mass[i] / total;
  return y;
}

}  // namespace deflag
