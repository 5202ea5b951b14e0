#pragma once

#include <cstddef>
#include <vector>

#include "deflag/grid.hpp"
#include "deflag/thermo.hpp"

namespace deflag {

/// Snapshot of the unknowns at time level n.
///
/// Cell arrays hold level-n values; `rho_prev` is the level n-1 density that
/// the time-shifted balances need. `mass_flux` is the per-face mass flux
/// (left-to-right orientation) linking rho_prev to rho over the step `dt`.
struct FieldState {
  std::vector<double> rho, rho_prev, p, h_s, e_s;
  std::vector<double> y_fuel, y_oxidant, y_neutral, y_product, z, G;
  std::vector<double> u, mass_flux;
  double t = 0.0;
  double dt = 0.0;
  std::size_t step = 0;

  static FieldState zeros(const StaggeredGrid& grid);

  std::size_t n_cells() const noexcept { return rho.size(); }
  Composition composition(std::size_t cell) const {
    return {y_fuel[cell], y_oxidant[cell], y_neutral[cell], y_product[cell]};
  }
  void set_composition(std::size_t cell, const Composition& y) {
    y_fuel[cell] = y[fuel];
    y_oxidant[cell] = y[oxidant];
    y_neutral[cell] = y[neutral];
    y_product[cell] = y[product];
  }
};

}  // namespace deflag
