#include "deflag/chemistry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deflag/errors.hpp"
#include "deflag/tridiag.hpp"

namespace deflag {

std::string to_string(TimeMode mode) {
  return mode == TimeMode::implicit_upwind ? "implicit_upwind" : "explicit_limited";
}

TimeMode parse_time_mode(const std::string& text) {
  if (text == "implicit_upwind" || text == "implicit") return TimeMode::implicit_upwind;
  if (text == "explicit_limited" || text == "explicit") return TimeMode::explicit_limited;
  throw ConfigError("unknown time mode '" + text + "'");
}

void ChemStepConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(flame_speed_product >= 0.0)) throw ConfigError("rho_u * u_f must be non-negative");
  limiter.validate();
}

double reaction_cutoff(const MixtureSpec& spec, double y_fuel, double z) {
  const double moles = y_fuel / spec.stoich_mass(fuel);
  return z <= 0.0 ? moles : moles - z;
}

double reaction_rate(const MixtureSpec& spec, double y_fuel, double z, double G) {
  const double burnt = std::max(0.5 - G, 0.0);
  if (burnt == 0.0) return 0.0;
  return reaction_cutoff(spec, y_fuel, z) * burnt;
}

std::vector<double> flame_advection_field(const StaggeredGrid& grid, std::span<const double> G,
                                          double flame_speed_product) {
  const std::size_t nf = grid.n_faces();
  std::vector<double> a(nf, 0.0);
  if (flame_speed_product == 0.0) return a;

  const auto [lo, hi] = std::minmax_element(G.begin(), G.end());
  const double range = *hi - *lo;
  if (range == 0.0) return a;
  const double threshold = 1e-12 * range / grid.spacing();

  std::vector<double> g_face(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t l = grid.left_cell(f);
    const std::size_t r = grid.right_cell(f);
    if (l == no_cell) {
      g_face[f] = G[r];
    } else if (r == no_cell) {
      g_face[f] = G[l];
    } else {
      g_face[f] = 0.5 * (G[l] + G[r]);
    }
  }
  for (std::size_t f = 0; f < nf; ++f) {
    if (grid.is_boundary_face(f)) continue;
    const std::size_t l = grid.left_cell(f);
    const std::size_t r = grid.right_cell(f);
    const std::size_t f_left = grid.left_face(l);
    const std::size_t f_right = grid.right_face(r);
    const double grad =
        (g_face[f_right] - g_face[f_left]) / (grid.cell_volume(l) + grid.cell_volume(r));
    if (std::abs(grad) < threshold) continue;
    a[f] = grad > 0.0 ? flame_speed_product : -flame_speed_product;
  }
  return a;
}

namespace {

// Adds the upwind flame term sum_f |a.n| (G_K - G_upstream) over inflow faces.
void add_flame_term(const StaggeredGrid& grid, std::span<const double> a, Tridiagonal& m) {
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (a[f] == 0.0 || grid.is_boundary_face(f)) continue;
    const std::size_t l = grid.left_cell(f);
    const std::size_t r = grid.right_cell(f);
    if (a[f] < 0.0) {
      m.diag[l] -= a[f];
      m.upper[l] += a[f];
    } else {
      m.diag[r] += a[f];
      m.lower[r] -= a[f];
    }
  }
}

std::vector<double> scaled(const StaggeredGrid& grid, std::span<const double> rho,
                           std::span<const double> y, double dt) {
  std::vector<double> out(grid.n_cells());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = grid.cell_volume(k) * rho[k] / dt * y[k];
  return out;
}

Tridiagonal convection_operator(const StaggeredGrid& grid, const FieldState& state, double dt,
                                const ChemStepConfig& cfg) {
  if (cfg.time_mode == TimeMode::implicit_upwind) {
    return upwind_transport_matrix(grid, state.rho, state.mass_flux, dt);
  }
  Tridiagonal m(grid.n_cells());
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    m.diag[k] = grid.cell_volume(k) * state.rho[k] / dt;
  }
  return m;
}

// Right-hand side carrying the level-n content: rho_prev y for the implicit
// mode, rho y* after the explicit convection sub-update otherwise.
std::vector<double> convected_rhs(const StaggeredGrid& grid, std::span<const double> y,
                                  const FieldState& state, double dt, const ChemStepConfig& cfg) {
  if (cfg.time_mode == TimeMode::implicit_upwind) return scaled(grid, state.rho_prev, y, dt);
  const auto star = explicit_transport(grid, y, state.rho_prev, state.rho, state.mass_flux, dt,
                                       cfg.limiter);
  return scaled(grid, state.rho, star, dt);
}

}  // namespace

std::vector<double> advance_G(const StaggeredGrid& grid, const FieldState& state, double dt,
                              const ChemStepConfig& cfg) {
  auto m = convection_operator(grid, state, dt, cfg);
  const auto a = flame_advection_field(grid, state.G, cfg.flame_speed_product);
  add_flame_term(grid, a, m);
  const auto rhs = convected_rhs(grid, state.G, state, dt, cfg);
  return solve(m, rhs, grid.periodic());
}

std::vector<double> advance_passive(const StaggeredGrid& grid, std::span<const double> y,
                                    const FieldState& state, double dt,
                                    const ChemStepConfig& cfg) {
  if (cfg.time_mode == TimeMode::implicit_upwind) {
    return implicit_upwind_transport(grid, y, state.rho_prev, state.rho, state.mass_flux, dt);
  }
  return explicit_transport(grid, y, state.rho_prev, state.rho, state.mass_flux, dt, cfg.limiter);
}

std::vector<double> advance_fuel(const StaggeredGrid& grid, const MixtureSpec& spec,
                                 const FieldState& state, std::span<const double> z_next,
                                 std::span<const double> G_next, double dt,
                                 const ChemStepConfig& cfg) {
  auto m = convection_operator(grid, state, dt, cfg);
  auto rhs = convected_rhs(grid, state.y_fuel, state, dt, cfg);
  if (cfg.reaction_enabled) {
    const double stoich = spec.stoich_mass(fuel);
    for (std::size_t k = 0; k < grid.n_cells(); ++k) {
      const double burnt = std::max(0.5 - G_next[k], 0.0);
      if (burnt == 0.0) continue;
      const double coeff = grid.cell_volume(k) * state.rho[k] / cfg.epsilon * burnt;
      m.diag[k] += coeff;
      if (z_next[k] > 0.0) rhs[k] += coeff * stoich * z_next[k];
    }
  }
  return solve(m, rhs, grid.periodic());
}

ClosedSpecies close_species(const MixtureSpec& spec, std::span<const double> y_fuel,
                            std::span<const double> z, std::span<const double> y_neutral) {
  constexpr double tol = 1e-10;
  const std::size_t n = y_fuel.size();
  ClosedSpecies out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.y_oxidant[k] = y_oxidant_from_z(spec, y_fuel[k], z[k]);
    out.y_product[k] = 1.0 - y_fuel[k] - out.y_oxidant[k] - y_neutral[k];
    for (double v : {y_fuel[k], out.y_oxidant[k], y_neutral[k], out.y_product[k]}) {
      if (v < -tol || v > 1.0 + tol || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "mass fraction out of bounds in cell " << k << ": (" << y_fuel[k] << ", "
            << out.y_oxidant[k] << ", " << y_neutral[k] << ", " << out.y_product[k] << ")";
        throw StepError(msg.str(), 0, v);
      }
    }
  }
  return out;
}

ChemistryResult chemistry_step(const StaggeredGrid& grid, const MixtureSpec& spec,
                               const FieldState& state, double dt, const ChemStepConfig& cfg) {
  ChemistryResult r;
  r.cfl = cfl_number(grid, state.mass_flux, state.rho, dt);
  r.G = advance_G(grid, state, dt, cfg);
  r.z = advance_passive(grid, state.z, state, dt, cfg);
  r.y_neutral = advance_passive(grid, state.y_neutral, state, dt, cfg);
  r.y_fuel = advance_fuel(grid, spec, state, r.z, r.G, dt, cfg);
  auto closed = close_species(spec, r.y_fuel, r.z, r.y_neutral);
  r.y_oxidant = std::move(closed.y_oxidant);
  r.y_product = std::move(closed.y_product);

  const std::size_t n = grid.n_cells();
  const double heat = reaction_heat_coefficient(spec);
  r.rate.assign(n, 0.0);
  r.reaction_heat.assign(n, 0.0);
  if (cfg.reaction_enabled) {
    for (std::size_t k = 0; k < n; ++k) {
      r.rate[k] = reaction_rate(spec, r.y_fuel[k], r.z[k], r.G[k]);
      r.reaction_heat[k] = heat * state.rho[k] / cfg.epsilon * r.rate[k];
    }
  }

  // Face values of the formation energy, consistent with the species faces
  // used above, for the internal-energy bookkeeping.
  std::vector<double> yf, zf, ynf;
  if (cfg.time_mode == TimeMode::implicit_upwind) {
    const LimiterParams up{};
    yf = face_values(grid, r.y_fuel, state.mass_flux, state.rho, dt, up);
    zf = face_values(grid, r.z, state.mass_flux, state.rho, dt, up);
    ynf = face_values(grid, r.y_neutral, state.mass_flux, state.rho, dt, up);
  } else {
    yf = face_values(grid, state.y_fuel, state.mass_flux, state.rho, dt, cfg.limiter);
    zf = face_values(grid, state.z, state.mass_flux, state.rho, dt, cfg.limiter);
    ynf = face_values(grid, state.y_neutral, state.mass_flux, state.rho, dt, cfg.limiter);
  }
  r.chemical_energy_face.resize(grid.n_faces());
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    const double yo = y_oxidant_from_z(spec, yf[f], zf[f]);
    const double yp = 1.0 - yf[f] - yo - ynf[f];
    r.chemical_energy_face[f] = chemical_energy(spec, {yf[f], yo, ynf[f], yp});
  }
  return r;
}

}  // namespace deflag
