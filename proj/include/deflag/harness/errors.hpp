#pragma once

#include <span>

#include "deflag/grid.hpp"
#include "deflag/oracle.hpp"
#include "deflag/state.hpp"

namespace deflag {

/// L1 norms of the discrete-minus-exact error per variable.
struct FieldErrors {
  double p = 0.0;
  double u = 0.0;
  double rho = 0.0;
  double y_fuel = 0.0;
  double G = 0.0;
  double T = 0.0;
};

/// sum_K |K| |values_K - exact_K|.
double l1_cell_error(const StaggeredGrid& grid, std::span<const double> values,
                     std::span<const double> exact);

/// Errors of `state` at time state.t against exact cell averages of the
/// pattern (dual-cell averages for the face velocity).
FieldErrors l1_errors(const StaggeredGrid& grid, const MixtureSpec& spec, const FieldState& state,
                      const WavePattern& pattern, double x0);

/// sum over cells with G <= 1/2 of |K| sum_i |y_i - asymptotic_i(y)|, the
/// distance between the relaxed composition and its chemical equilibrium.
double burnt_zone_distance(const StaggeredGrid& grid, const MixtureSpec& spec,
                           const FieldState& state);

}  // namespace deflag
