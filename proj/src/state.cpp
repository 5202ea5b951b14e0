#include "deflag/state.hpp"

namespace deflag {

FieldState FieldState::zeros(const StaggeredGrid& grid) {
  const std::size_t n = grid.n_cells();
  const std::size_t nf = grid.n_faces();
  FieldState s;
  for (auto* v : {&s.rho, &s.rho_prev, &s.p, &s.h_s, &s.e_s, &s.y_fuel, &s.y_oxidant,
                  &s.y_neutral, &s.y_product, &s.z, &s.G}) {
    v->assign(n, 0.0);
  }
  s.u.assign(nf, 0.0);
  s.mass_flux.assign(nf, 0.0);
  return s;
}

}  // namespace deflag
