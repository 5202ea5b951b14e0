#include "deflag/harness/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace deflag {

double l1_cell_error(const StaggeredGrid& grid, std::span<const double> values,
                     std::span<const double> exact) {
  if (values.size() != grid.n_cells() || exact.size() != grid.n_cells()) {
    throw std::invalid_argument("l1_cell_error: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    sum += grid.cell_volume(k) * std::abs(values[k] - exact[k]);
  }
  return sum;
}

FieldErrors l1_errors(const StaggeredGrid& grid, const MixtureSpec& spec, const FieldState& state,
                      const WavePattern& pattern, double x0) {
  FieldErrors e;
  const double t = state.t;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    const double a = grid.face_position(grid.left_face(k));
    const PointState exact = average_solution(pattern, a, a + grid.cell_volume(k), t, x0);
    const double vol = grid.cell_volume(k);
    const double T =
        temperature(spec, state.e_s[k], mixture_gas_constant(spec, state.composition(k)));
    e.p += vol * std::abs(state.p[k] - exact.gas.p);
    e.rho += vol * std::abs(state.rho[k] - exact.gas.rho);
    e.y_fuel += vol * std::abs(state.y_fuel[k] - exact.gas.y[fuel]);
    e.G += vol * std::abs(state.G[k] - exact.G);
    e.T += vol * std::abs(T - exact.T);
  }
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) continue;
    const double x = grid.face_position(f);
    const double half = 0.5 * grid.dual_volume(f);
    const double exact_u = average_solution(pattern, x - half, x + half, t, x0).gas.u;
    e.u += grid.dual_volume(f) * std::abs(state.u[f] - exact_u);
  }
  return e;
}

double burnt_zone_distance(const StaggeredGrid& grid, const MixtureSpec& spec,
                           const FieldState& state) {
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    if (state.G[k] > 0.5) continue;
    const Composition y = state.composition(k);
    const Composition eq = asymptotic_composition(spec, y, 0.0);
    double d = 0.0;
    for (std::size_t i = 0; i < n_species; ++i) d += std::abs(y[i] - eq[i]);
    sum += grid.cell_volume(k) * d;
  }
  return sum;
}

}  // namespace deflag
