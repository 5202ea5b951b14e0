#include "deflag/harness/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deflag/errors.hpp"
#include "deflag/transport.hpp"

namespace deflag {

Simulation::Simulation(StaggeredGrid grid, MixtureSpec spec, SchemeConfig cfg,
                       FieldState initial, double dt)
    : grid_(std::move(grid)),
      spec_(std::move(spec)),
      cfg_(std::move(cfg)),
      state_(std::move(initial)),
      dt_(dt),
      initial_energy_(total_energy(grid_, spec_, state_, dt)) {
  spec_.validate();
  cfg_.chemistry.validate();
  cfg_.correction.validate();
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
}

StepDiagnostics Simulation::measure(const FieldState& s) const {
  StepDiagnostics d;
  d.step = s.step;
  d.t = s.t;
  d.dt = dt_;
  d.energy = total_energy(grid_, spec_, s, dt_);
  const double scale = std::abs(initial_energy_) > 0.0 ? std::abs(initial_energy_) : 1.0;
  d.energy_drift = std::abs(d.energy - initial_energy_) / scale;
  d.min_rho = *std::min_element(s.rho.begin(), s.rho.end());
  d.min_e_s = *std::min_element(s.e_s.begin(), s.e_s.end());
  d.min_G = *std::min_element(s.G.begin(), s.G.end());
  d.max_G = *std::max_element(s.G.begin(), s.G.end());
  d.min_fraction = 1.0;
  for (std::size_t k = 0; k < s.n_cells(); ++k) {
    d.mass += grid_.cell_volume(k) * s.rho[k];
    const auto y = s.composition(k);
    double sum = 0.0;
    for (double v : y) {
      sum += v;
      d.min_fraction = std::min(d.min_fraction, v);
    }
    d.unit_sum_error = std::max(d.unit_sum_error, std::abs(sum - 1.0));
  }
  return d;
}

StepDiagnostics Simulation::initial_diagnostics() const { return measure(state_); }

StepDiagnostics Simulation::advance() {
  const std::size_t step = state_.step + 1;
  const FieldState& s = state_;
  const double dt = dt_;
  FieldState next;
  ChemistryResult chem;
  CorrectionResult cor;
  std::vector<double> S;
  try {
    chem = chemistry_step(grid_, spec_, s, dt, cfg_.chemistry);

    const auto rho_dual_prev = dual_density(grid_, s.rho_prev);
    const auto rho_dual = dual_density(grid_, s.rho);
    const auto grad = pressure_gradient(grid_, s.p);
    const auto scaled = scale_pressure_gradient(grad, rho_dual, rho_dual_prev);
    const auto dual_flux = dual_mass_flux(grid_, s.mass_flux, s.rho_prev, s.rho, dt);
    const auto u_tilde = predict_velocity(grid_, rho_dual_prev, rho_dual, s.u, dual_flux, scaled, dt);
    const auto R = kinetic_residuals(grid_, rho_dual_prev, u_tilde, s.u, dt);
    S = compensation_source(grid_, R);

    std::vector<double> source(grid_.n_cells());
    for (std::size_t k = 0; k < source.size(); ++k) source[k] = chem.reaction_heat[k] + S[k];
    cor = correction_solve(grid_, spec_.gamma, s.rho, s.p, rho_dual, u_tilde, scaled, source, dt,
                           cfg_.correction);
  } catch (const StepError& e) {
    throw StepError(e.what(), step, e.residual());
  } catch (const SolveError& e) {
    throw StepError(e.what(), step, e.residual());
  } catch (const StateError& e) {
    throw StepError(e.what(), step);
  }

  next.rho_prev = s.rho;
  next.rho = std::move(cor.rho);
  next.p = std::move(cor.p);
  next.h_s = std::move(cor.h_s);
  next.e_s = std::move(cor.e_s);
  next.u = std::move(cor.u);
  next.mass_flux = std::move(cor.mass_flux);
  next.G = chem.G;
  next.z = chem.z;
  next.y_fuel = chem.y_fuel;
  next.y_oxidant = chem.y_oxidant;
  next.y_neutral = chem.y_neutral;
  next.y_product = chem.y_product;
  next.t = s.t + dt;
  next.dt = dt;
  next.step = step;

  StepDiagnostics d = measure(next);
  d.cfl = chem.cfl;
  d.newton_iterations = cor.iterations;
  d.correction_residual = cor.residual;
  d.used_fallback = cor.used_fallback;
  for (std::size_t k = 0; k < grid_.n_cells(); ++k) {
    d.heat_release += dt * grid_.cell_volume(k) * chem.reaction_heat[k];
    d.compensation += dt * grid_.cell_volume(k) * S[k];
  }
  const auto ie = internal_energy_residual(grid_, spec_, s, next, chem.chemical_energy_face, S, dt);
  double ie_scale = 0.0;
  for (std::size_t k = 0; k < grid_.n_cells(); ++k) {
    ie_scale = std::max(ie_scale, next.rho[k] * next.e_s[k] / dt);
  }
  for (double v : ie) d.internal_energy_residual = std::max(d.internal_energy_residual, std::abs(v));
  d.internal_energy_residual /= ie_scale;

  auto fail = [&](const std::string& what, double value) {
    std::ostringstream msg;
    msg << "step " << step << " (t = " << next.t << "): " << what << " [" << value << "]";
    throw StepError(msg.str(), step, value);
  };
  constexpr double tol = 1e-10;
  if (!(d.min_rho > 0.0)) fail("non-positive density", d.min_rho);
  if (!(d.min_e_s > 0.0)) fail("non-positive sensible energy", d.min_e_s);
  if (d.unit_sum_error > tol) fail("mass fractions do not sum to one", d.unit_sum_error);
  if (d.min_fraction < -tol) fail("negative mass fraction", d.min_fraction);
  if (d.min_G < -tol || d.max_G > 1.0 + tol) fail("G outside [0, 1]", d.min_G < 0 ? d.min_G : d.max_G);
  if (!(d.energy_drift < cfg_.energy_drift_tol)) fail("total energy drift", d.energy_drift);
  if (cfg_.chemistry.time_mode == TimeMode::explicit_limited && d.cfl > 1.0 + 1e-12) {
    fail("CFL above 1 in explicit mode", d.cfl);
  }

  state_ = std::move(next);
  return d;
}

}  // namespace deflag
