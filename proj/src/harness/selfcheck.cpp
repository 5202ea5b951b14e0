#include "deflag/harness/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "deflag/harness/run.hpp"
#include "deflag/hydro.hpp"
#include "deflag/oracle.hpp"

namespace deflag {
namespace {

std::string describe(const char* label, double value) {
  std::ostringstream s;
  s << label << " = " << value;
  return s.str();
}

CheckResult check_duality(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(10, 200);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const StaggeredGrid grid(size(rng), 0.0, 1.0 + dist(rng) * 0.5);
    std::vector<double> p(grid.n_cells()), u(grid.n_faces(), 0.0);
    for (double& v : p) v = 1e5 * (1.0 + 0.5 * dist(rng));
    for (std::size_t f = 0; f < grid.n_faces(); ++f) {
      if (!grid.is_boundary_face(f)) u[f] = 100.0 * dist(rng);
    }
    const auto div = velocity_divergence(grid, u);
    const auto grad = pressure_gradient(grid, p);
    double sum = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < grid.n_cells(); ++k) {
      sum += grid.cell_volume(k) * p[k] * div[k];
      scale += std::abs(grid.cell_volume(k) * p[k] * div[k]);
    }
    for (std::size_t f = 0; f < grid.n_faces(); ++f) {
      sum += grid.dual_volume(f) * u[f] * grad[f];
      scale += std::abs(grid.dual_volume(f) * u[f] * grad[f]);
    }
    worst = std::max(worst, std::abs(sum) / scale);
  }
  return {"gradient/divergence duality", worst < 1e-12, describe("max relative residual", worst)};
}

CheckResult check_oracle() {
  const CaseConfig cfg;
  const WavePattern w = case_pattern(cfg);
  const bool ok = w.max_residual() < 1e-10 && w.precursor_speed > w.reactive_speed;
  return {"oracle jump conditions", ok, describe("max jump residual", w.max_residual())};
}

CaseConfig uniform_case() {
  CaseConfig cfg;
  cfg.init = InitMode::uniform;
  cfg.n_cells = 50;
  cfg.uniform_G = 1.0;
  cfg.t_start = 0.0;
  cfg.t_end = 1e-3;
  cfg.dt = 5e-5;
  return cfg;
}

CheckResult check_quiescent() {
  const RunResult r = run_case(uniform_case());
  double worst = 0.0;
  const FieldState& a = r.setup.state;
  const FieldState& b = r.final_state;
  for (std::size_t k = 0; k < b.n_cells(); ++k) {
    worst = std::max({worst, std::abs(b.rho[k] - a.rho[k]) / a.rho[k],
                      std::abs(b.p[k] - a.p[k]) / a.p[k], std::abs(b.G[k] - a.G[k])});
  }
  for (double v : b.u) worst = std::max(worst, std::abs(v));
  return {"quiescent state is steady", worst < 1e-12, describe("max change", worst)};
}

CheckResult check_contact() {
  CaseConfig cfg = uniform_case();
  cfg.uniform_u = 50.0;
  cfg.boundary = BoundaryKind::periodic;
  cfg.reaction = false;
  PreparedCase pc = prepare_case(cfg);
  CellData cells;
  const Composition air = mass_fractions_from_molar(pc.spec, {0.0, 0.21, 0.79, 0.0});
  const Composition mix = mass_fractions_from_molar(pc.spec, cfg.molar_right);
  for (std::size_t k = 0; k < pc.grid.n_cells(); ++k) {
    const bool inside = k >= 10 && k < 30;
    cells.rho.push_back(inside ? 3.0 : 1.0);
    cells.p.push_back(cfg.uniform_p);
    cells.G.push_back(inside ? 0.0 : 1.0);
    cells.y.push_back(inside ? air : mix);
  }
  const std::vector<double> u(pc.grid.n_faces(), cfg.uniform_u);
  pc.state = build_initial_state(pc.grid, pc.spec, cells, u, pc.dt, cfg.t_start);
  const RunResult r = run_prepared(pc);
  double worst = 0.0;
  for (double p : r.final_state.p) worst = std::max(worst, std::abs(p - cfg.uniform_p) / cfg.uniform_p);
  for (double v : r.final_state.u) {
    worst = std::max(worst, std::abs(v - cfg.uniform_u) / cfg.uniform_u);
  }
  return {"contact discontinuity preserved", worst < 1e-11, describe("max scaled deviation", worst)};
}

CheckResult check_energy() {
  CaseConfig cfg;
  cfg.n_cells = 100;
  cfg.t_end = cfg.t_start + 2e-4;
  const RunResult r = run_case(cfg);
  double drift = 0.0, ie = 0.0;
  for (const auto& d : r.diagnostics) {
    drift = std::max(drift, d.energy_drift);
    ie = std::max(ie, d.internal_energy_residual);
  }
  std::ostringstream s;
  s << "steps = " << r.setup.n_steps << ", max energy drift = " << drift
    << ", max internal-energy residual = " << ie;
  return {"total energy conserved", drift < 1e-8 && ie < 1e-9, s.str()};
}

template <typename F>
CheckResult guarded(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_self_checks(unsigned seed) {
  std::mt19937_64 rng(seed);
  return {guarded("gradient/divergence duality", [&] { return check_duality(rng); }),
          guarded("oracle jump conditions", check_oracle),
          guarded("quiescent state is steady", check_quiescent),
          guarded("contact discontinuity preserved", check_contact),
          guarded("total energy conserved", check_energy)};
}

}  // namespace deflag
