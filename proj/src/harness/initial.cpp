#include "deflag/harness/initial.hpp"

#include <cmath>

#include "deflag/errors.hpp"
#include "deflag/harness/csv.hpp"
#include "deflag/hydro.hpp"
#include "deflag/transport.hpp"

namespace deflag {
namespace {

struct InitialData {
  CellData cells;
  std::vector<double> u;
};

InitialData oracle_data(const StaggeredGrid& grid, const WavePattern& pattern, double t,
                        double x0) {
  InitialData d;
  const std::size_t n = grid.n_cells();
  for (std::size_t k = 0; k < n; ++k) {
    const double a = grid.face_position(grid.left_face(k));
    const double b = a + grid.cell_volume(k);
    const PointState avg = average_solution(pattern, a, b, t, x0);
    d.cells.rho.push_back(avg.gas.rho);
    d.cells.p.push_back(avg.gas.p);
    d.cells.G.push_back(avg.G);
    d.cells.y.push_back(avg.gas.y);
  }
  d.u.assign(grid.n_faces(), 0.0);
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) continue;
    const double x = grid.face_position(f);
    const double half = 0.5 * grid.dual_volume(f);
    d.u[f] = average_solution(pattern, x - half, x + half, t, x0).gas.u;
  }
  return d;
}

InitialData uniform_data(const CaseConfig& cfg, const StaggeredGrid& grid) {
  InitialData d;
  const Composition y = mass_fractions_from_molar(cfg.mixture, cfg.molar_right);
  const std::size_t n = grid.n_cells();
  d.cells.rho.assign(n, cfg.uniform_rho);
  d.cells.p.assign(n, cfg.uniform_p);
  d.cells.G.assign(n, cfg.uniform_G);
  d.cells.y.assign(n, y);
  d.u.assign(grid.n_faces(), cfg.uniform_u);
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) d.u[f] = 0.0;
  }
  return d;
}

InitialData profile_data(const CaseConfig& cfg, const StaggeredGrid& grid) {
  const ProfileTable table = read_profile_csv(cfg.profile_path);
  if (table.rows.size() != grid.n_cells()) {
    throw ConfigError("profile has " + std::to_string(table.rows.size()) + " cells, config has " +
                      std::to_string(grid.n_cells()));
  }
  InitialData d;
  d.cells.rho = table.column("rho");
  d.cells.p = table.column("p");
  d.cells.G = table.column("G");
  const auto yf = table.column("y_F");
  const auto yo = table.column("y_O");
  const auto yn = table.column("y_N");
  const auto yp = table.column("y_P");
  for (std::size_t k = 0; k < grid.n_cells(); ++k) d.cells.y.push_back({yf[k], yo[k], yn[k], yp[k]});
  const auto uc = table.column("u_face_interp");
  d.u.assign(grid.n_faces(), 0.0);
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) continue;
    d.u[f] = 0.5 * (uc[grid.left_cell(f)] + uc[grid.right_cell(f)]);
  }
  return d;
}

}  // namespace

WavePattern case_pattern(const CaseConfig& cfg) {
  const GasState right = gas_state_from_pt(cfg.mixture, cfg.p_right, cfg.T_right, cfg.molar_right);
  return solve_deflagration_riemann(cfg.mixture, right, cfg.u_left, cfg.flame_speed);
}

FieldState build_initial_state(const StaggeredGrid& grid, const MixtureSpec& spec,
                               const CellData& cells, std::span<const double> u, double dt,
                               double t) {
  const std::size_t n = grid.n_cells();
  if (cells.rho.size() != n || cells.p.size() != n || cells.G.size() != n || cells.y.size() != n ||
      u.size() != grid.n_faces()) {
    throw ConfigError("initial data does not match the grid");
  }
  FieldState s = FieldState::zeros(grid);
  s.rho_prev = cells.rho;
  s.u.assign(u.begin(), u.end());
  s.rho = solve_mass_balance(grid, s.rho_prev, s.u, dt);
  s.mass_flux = primal_mass_flux(grid, s.rho, s.u);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(s.rho[k] > 0.0) || !(cells.p[k] > 0.0)) {
      throw StateError("initial density or pressure not positive in cell " + std::to_string(k));
    }
    s.p[k] = cells.p[k];
    s.e_s[k] = sensible_energy_from_pressure(spec.gamma, s.p[k], s.rho[k]);
    s.h_s[k] = sensible_enthalpy(spec.gamma, s.e_s[k]);
    s.set_composition(k, cells.y[k]);
    s.z[k] = z_from_fractions(spec, cells.y[k][fuel], cells.y[k][oxidant]);
    s.G[k] = cells.G[k];
  }
  s.t = t;
  s.dt = dt;
  s.step = 0;
  return s;
}

double choose_time_step(const CaseConfig& cfg, const StaggeredGrid& grid,
                        std::span<const double> rho, std::span<const double> u) {
  const double span = cfg.t_end - cfg.t_start;
  double target = cfg.dt;
  if (!(target > 0.0)) {
    const auto flux = primal_mass_flux(grid, rho, u);
    const double cfl_per_dt = cfl_number(grid, flux, rho, 1.0);
    target = cfl_per_dt > 0.0 ? cfg.cfl / cfl_per_dt : span / 100.0;
  }
  const double steps = std::ceil(span / target * (1.0 - 1e-12));
  return span / std::max(1.0, steps);
}

PreparedCase prepare_case(const CaseConfig& cfg) {
  cfg.validate();
  StaggeredGrid grid(cfg.n_cells, cfg.x_left, cfg.x_right, cfg.boundary);
  std::optional<WavePattern> pattern;
  InitialData data;
  switch (cfg.init) {
    case InitMode::riemann_oracle:
      pattern = case_pattern(cfg);
      data = oracle_data(grid, *pattern, cfg.t_start, cfg.x0);
      break;
    case InitMode::uniform:
      data = uniform_data(cfg, grid);
      break;
    case InitMode::profile:
      data = profile_data(cfg, grid);
      break;
  }
  const double dt = choose_time_step(cfg, grid, data.cells.rho, data.u);
  const auto n_steps = static_cast<std::size_t>(std::llround((cfg.t_end - cfg.t_start) / dt));
  double rho_u = cfg.rho_unburnt;
  if (!(rho_u > 0.0)) {
    rho_u = pattern ? pattern->rho_unburnt
                    : gas_state_from_pt(cfg.mixture, cfg.p_right, cfg.T_right, cfg.molar_right).rho;
  }

  PreparedCase pc{std::move(grid), cfg.mixture, {}, {}, dt, n_steps, cfg.effective_epsilon(),
                  rho_u, std::move(pattern)};
  pc.scheme.chemistry = cfg.chemistry_config(rho_u);
  pc.scheme.correction = cfg.correction;
  pc.scheme.energy_drift_tol = cfg.energy_drift_tol;
  pc.state = build_initial_state(pc.grid, pc.spec, data.cells, data.u, dt, cfg.t_start);
  return pc;
}

}  // namespace deflag
