#include "deflag/hydro.hpp"

#include <algorithm>
#include <cmath>

#include "deflag/errors.hpp"
#include "deflag/kernels/kernels.hpp"
#include "deflag/transport.hpp"
#include "deflag/tridiag.hpp"

namespace deflag {

void CorrectionSolveConfig::validate() const {
  if (!(nonlinear_tol > 0.0)) throw ConfigError("nonlinear_tol must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (!(under_relaxation > 0.0 && under_relaxation <= 1.0)) {
    throw ConfigError("under_relaxation must lie in (0, 1]");
  }
}

std::vector<double> pressure_gradient(const StaggeredGrid& grid, std::span<const double> p) {
  const std::size_t n = grid.n_cells();
  std::vector<double> g(grid.n_faces(), 0.0);
  kernels::active().face_gradient(p.data(), p.data() + 1, grid.dual_volumes().data() + 1,
                                  g.data() + 1, n - 1);
  if (grid.periodic()) g[0] = (p[0] - p[n - 1]) / grid.dual_volume(0);
  return g;
}

std::vector<double> velocity_divergence(const StaggeredGrid& grid, std::span<const double> u) {
  std::vector<double> d(grid.n_cells());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = (u[grid.right_face(k)] - u[grid.left_face(k)]) / grid.cell_volume(k);
  }
  return d;
}

std::vector<double> scale_pressure_gradient(std::span<const double> grad,
                                            std::span<const double> rho_dual_n,
                                            std::span<const double> rho_dual_prev) {
  std::vector<double> out(grad.size());
  for (std::size_t f = 0; f < grad.size(); ++f) {
    out[f] = grad[f] == 0.0 ? 0.0 : grad[f] * std::sqrt(rho_dual_n[f] / rho_dual_prev[f]);
  }
  return out;
}

namespace {

// Centred velocity on the dual face at the centre of `cell`.
double centred_velocity(const StaggeredGrid& grid, std::span<const double> u, std::size_t cell) {
  return 0.5 * (u[grid.left_face(cell)] + u[grid.right_face(cell)]);
}

}  // namespace

std::vector<double> predict_velocity(const StaggeredGrid& grid,
                                     std::span<const double> rho_dual_prev,
                                     std::span<const double> rho_dual, std::span<const double> u,
                                     std::span<const double> dual_flux,
                                     std::span<const double> scaled_grad, double dt) {
  const std::size_t nf = grid.n_faces();
  Tridiagonal m(nf);
  std::vector<double> rhs(nf, 0.0);
  for (std::size_t f = 0; f < nf; ++f) {
    if (grid.is_boundary_face(f)) {
      m.diag[f] = 1.0;
      continue;
    }
    const double vol = grid.dual_volume(f);
    const double flux_right = dual_flux[grid.right_cell(f)];
    const double flux_left = dual_flux[grid.left_cell(f)];
    m.diag[f] = vol * rho_dual[f] / dt + 0.5 * flux_right - 0.5 * flux_left;
    m.upper[f] = 0.5 * flux_right;
    m.lower[f] = -0.5 * flux_left;
    rhs[f] = vol * rho_dual_prev[f] / dt * u[f] - vol * scaled_grad[f];
  }
  if (!grid.periodic()) {
    // Couplings into the wall rows are inert since those unknowns vanish.
    m.upper[0] = 0.0;
    m.lower[nf - 1] = 0.0;
  }
  auto out = solve(m, rhs, grid.periodic());
  for (std::size_t f = 0; f < nf; ++f) {
    if (grid.is_boundary_face(f)) out[f] = 0.0;
  }
  return out;
}

std::vector<double> prediction_residual(const StaggeredGrid& grid,
                                        std::span<const double> rho_dual_prev,
                                        std::span<const double> rho_dual,
                                        std::span<const double> u,
                                        std::span<const double> dual_flux,
                                        std::span<const double> scaled_grad,
                                        std::span<const double> u_tilde, double dt) {
  std::vector<double> r(grid.n_faces(), 0.0);
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) continue;
    const std::size_t l = grid.left_cell(f);
    const std::size_t rc = grid.right_cell(f);
    const double vol = grid.dual_volume(f);
    r[f] = vol * (rho_dual[f] * u_tilde[f] - rho_dual_prev[f] * u[f]) / dt +
           dual_flux[rc] * centred_velocity(grid, u_tilde, rc) -
           dual_flux[l] * centred_velocity(grid, u_tilde, l) + vol * scaled_grad[f];
  }
  return r;
}

std::vector<double> solve_mass_balance(const StaggeredGrid& grid, std::span<const double> rho,
                                       std::span<const double> u, double dt) {
  const std::vector<double> ones(grid.n_cells(), 1.0);
  const auto m = upwind_transport_matrix(grid, ones, u, dt);
  std::vector<double> rhs(grid.n_cells());
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = grid.cell_volume(k) * rho[k] / dt;
  return solve(m, rhs, grid.periodic());
}

namespace {

struct PressureProblem {
  const StaggeredGrid& grid;
  double gamma;
  std::span<const double> p_old;
  std::span<const double> rho_dual;
  std::span<const double> u_tilde;
  std::span<const double> scaled_grad;
  std::span<const double> source;
  double dt;

  // u_f(p) = base_f - c_f (p_R - p_L)
  std::vector<double> base, coupling;

  void setup() {
    const std::size_t nf = grid.n_faces();
    base.assign(nf, 0.0);
    coupling.assign(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f) {
      if (grid.is_boundary_face(f)) continue;
      base[f] = u_tilde[f] + dt / rho_dual[f] * scaled_grad[f];
      coupling[f] = dt / (rho_dual[f] * grid.dual_volume(f));
    }
  }

  std::vector<double> velocity(std::span<const double> p) const {
    std::vector<double> u(grid.n_faces(), 0.0);
    for (std::size_t f = 0; f < grid.n_faces(); ++f) {
      if (grid.is_boundary_face(f)) continue;
      u[f] = base[f] - coupling[f] * (p[grid.right_cell(f)] - p[grid.left_cell(f)]);
    }
    return u;
  }

  // Residual and, if `jac` is non-null, its Jacobian with frozen upwinding.
  std::vector<double> residual(std::span<const double> p, std::span<const double> u,
                               Tridiagonal* jac) const {
    const std::size_t n = grid.n_cells();
    const double inv_gm1 = 1.0 / (gamma - 1.0);
    std::vector<double> h(n);
    if (jac) *jac = Tridiagonal(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double vol = grid.cell_volume(k);
      double value = vol * inv_gm1 * (p[k] - p_old[k]) / dt - vol * source[k];
      double d_self = vol * inv_gm1 / dt;
      double d_left = 0.0;
      double d_right = 0.0;

      const std::size_t r = grid.right_face(k);
      if (!grid.is_boundary_face(r)) {
        const std::size_t kr = grid.right_cell(r);
        const bool from_self = u[r] >= 0.0;
        const double p_up = from_self ? p[k] : p[kr];
        const double c = coupling[r];
        value += inv_gm1 * p_up * u[r] + p[k] * u[r];
        d_self += inv_gm1 * ((from_self ? u[r] : 0.0) + p_up * c) + u[r] + p[k] * c;
        d_right += inv_gm1 * ((from_self ? 0.0 : u[r]) - p_up * c) - p[k] * c;
      }
      const std::size_t l = grid.left_face(k);
      if (!grid.is_boundary_face(l)) {
        const std::size_t kl = grid.left_cell(l);
        const bool from_left = u[l] >= 0.0;
        const double p_up = from_left ? p[kl] : p[k];
        const double c = coupling[l];
        value -= inv_gm1 * p_up * u[l] + p[k] * u[l];
        d_left -= inv_gm1 * ((from_left ? u[l] : 0.0) + p_up * c) + p[k] * c;
        d_self -= inv_gm1 * ((from_left ? 0.0 : u[l]) - p_up * c) + u[l] - p[k] * c;
      }
      h[k] = value;
      if (jac) {
        jac->diag[k] = d_self;
        jac->lower[k] = d_left;
        jac->upper[k] = d_right;
      }
    }
    return h;
  }
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> pressure_equation_residual(const StaggeredGrid& grid, double gamma,
                                               std::span<const double> p_old,
                                               std::span<const double> p_new,
                                               std::span<const double> u_new,
                                               std::span<const double> source, double dt) {
  PressureProblem prob{grid, gamma, p_old, {}, {}, {}, source, dt, {}, {}};
  prob.coupling.assign(grid.n_faces(), 0.0);
  return prob.residual(p_new, u_new, nullptr);
}

CorrectionResult correction_solve(const StaggeredGrid& grid, double gamma,
                                  std::span<const double> rho, std::span<const double> p,
                                  std::span<const double> rho_dual,
                                  std::span<const double> u_tilde,
                                  std::span<const double> scaled_grad,
                                  std::span<const double> source, double dt,
                                  const CorrectionSolveConfig& cfg) {
  const std::size_t n = grid.n_cells();
  PressureProblem prob{grid, gamma, p, rho_dual, u_tilde, scaled_grad, source, dt, {}, {}};
  prob.setup();

  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale = std::max(scale, grid.cell_volume(k) * p[k] / ((gamma - 1.0) * dt));
  }
  if (!(scale > 0.0)) throw SolveError("correction: non-positive pressure at step start");

  CorrectionResult out;
  std::vector<double> pk(p.begin(), p.end());
  auto iterate = [&](bool relaxed, int budget) {
    for (int it = 0; it < budget; ++it) {
      auto u = prob.velocity(pk);
      Tridiagonal jac(n);
      const auto h = prob.residual(pk, u, &jac);
      const double res = max_abs(h) / scale;
      out.residual = res;
      if (res <= cfg.nonlinear_tol) return true;
      ++out.iterations;
      std::vector<double> rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs[k] = -h[k];
      const auto delta = solve(jac, rhs, grid.periodic());

      double step = relaxed ? cfg.under_relaxation : 1.0;
      std::vector<double> trial(n);
      for (int halving = 0; halving < 60; ++halving) {
        bool positive = true;
        for (std::size_t k = 0; k < n; ++k) {
          trial[k] = pk[k] + step * delta[k];
          positive = positive && trial[k] > 0.0;
        }
        if (positive && !relaxed && halving < 8) {
          const auto ht = prob.residual(trial, prob.velocity(trial), nullptr);
          if (max_abs(ht) / scale < res || halving == 7) break;
        } else if (positive) {
          break;
        }
        step *= 0.5;
      }
      pk.swap(trial);
    }
    const auto h = prob.residual(pk, prob.velocity(pk), nullptr);
    out.residual = max_abs(h) / scale;
    return out.residual <= cfg.nonlinear_tol;
  };

  bool ok = iterate(false, cfg.max_iterations);
  if (!ok) {
    out.used_fallback = true;
    pk.assign(p.begin(), p.end());
    ok = iterate(true, cfg.max_iterations);
  }
  if (!ok) throw SolveError("correction: pressure iteration did not converge", out.residual);
  for (double v : pk) {
    if (!(v > 0.0)) throw SolveError("correction: non-positive pressure", v);
  }

  out.p = pk;
  out.u = prob.velocity(pk);
  out.rho = solve_mass_balance(grid, rho, out.u, dt);
  for (double v : out.rho) {
    if (!(v > 0.0)) throw SolveError("correction: non-positive density", v);
  }
  out.e_s.resize(n);
  kernels::active().eos_energy(gamma - 1.0, out.p.data(), out.rho.data(), out.e_s.data(), n);
  out.h_s.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.h_s[k] = sensible_enthalpy(gamma, out.e_s[k]);
  out.mass_flux = primal_mass_flux(grid, out.rho, out.u);
  return out;
}

std::vector<double> kinetic_residuals(const StaggeredGrid& grid,
                                      std::span<const double> rho_dual_prev,
                                      std::span<const double> u_tilde, std::span<const double> u,
                                      double dt) {
  std::vector<double> r(grid.n_faces());
  kernels::active().kinetic_residual(rho_dual_prev.data(), u_tilde.data(), u.data(),
                                     grid.dual_volumes().data(), 1.0 / (2.0 * dt), r.data(),
                                     r.size());
  return r;
}

std::vector<double> compensation_source(const StaggeredGrid& grid, std::span<const double> R) {
  std::vector<double> s(grid.n_cells());
  for (std::size_t k = 0; k < s.size(); ++k) {
    double sum = 0.0;
    for (std::size_t f : {grid.left_face(k), grid.right_face(k)}) {
      sum += grid.is_boundary_face(f) ? R[f] : 0.5 * R[f];
    }
    s[k] = sum / grid.cell_volume(k);
  }
  return s;
}

std::vector<double> face_kinetic_energy(std::span<const double> rho_dual_prev,
                                        std::span<const double> u, std::span<const double> grad,
                                        double dt) {
  std::vector<double> e(u.size());
  for (std::size_t f = 0; f < e.size(); ++f) {
    const double rho = rho_dual_prev[f];
    e[f] = 0.5 * rho * u[f] * u[f] + dt * dt * grad[f] * grad[f] / (2.0 * rho);
  }
  return e;
}

std::vector<double> cell_kinetic_energy(const StaggeredGrid& grid, const FieldState& state,
                                        double dt) {
  const auto rho_dual = dual_density(grid, state.rho_prev);
  const auto grad = pressure_gradient(grid, state.p);
  const auto ef = face_kinetic_energy(rho_dual, state.u, grad, dt);
  std::vector<double> ek(grid.n_cells());
  for (std::size_t k = 0; k < ek.size(); ++k) {
    const std::size_t l = grid.left_face(k);
    const std::size_t r = grid.right_face(k);
    ek[k] = (grid.dual_volume(l) * ef[l] + grid.dual_volume(r) * ef[r]) /
            (2.0 * grid.cell_volume(k));
  }
  return ek;
}

std::vector<double> kinetic_energy_flux(const StaggeredGrid& grid,
                                        std::span<const double> dual_flux,
                                        std::span<const double> u_tilde) {
  auto dual_term = [&](std::size_t cell) {
    return dual_flux[cell] * 0.5 * u_tilde[grid.left_face(cell)] * u_tilde[grid.right_face(cell)];
  };
  std::vector<double> g(grid.n_faces(), 0.0);
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) continue;
    g[f] = 0.5 * (dual_term(grid.left_cell(f)) + dual_term(grid.right_cell(f)));
  }
  return g;
}

EnergyBreakdown energy_breakdown(const StaggeredGrid& grid, const MixtureSpec& spec,
                                 const FieldState& state, double dt) {
  EnergyBreakdown e;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    const double vol = grid.cell_volume(k);
    e.sensible += vol * state.rho[k] * state.e_s[k];
    e.chemical += vol * state.rho_prev[k] * chemical_energy(spec, state.composition(k));
  }
  const auto rho_dual = dual_density(grid, state.rho_prev);
  const auto grad = pressure_gradient(grid, state.p);
  const auto ef = face_kinetic_energy(rho_dual, state.u, grad, dt);
  for (std::size_t f = 0; f < grid.n_faces(); ++f) e.kinetic += grid.dual_volume(f) * ef[f];
  return e;
}

double total_energy(const StaggeredGrid& grid, const MixtureSpec& spec, const FieldState& state,
                    double dt) {
  return energy_breakdown(grid, spec, state, dt).total();
}

std::vector<double> internal_energy_residual(const StaggeredGrid& grid, const MixtureSpec& spec,
                                             const FieldState& before, const FieldState& after,
                                             std::span<const double> chemical_energy_face,
                                             std::span<const double> source, double dt) {
  std::vector<double> r(grid.n_cells());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double vol = grid.cell_volume(k);
    const double e_new = after.rho[k] * after.e_s[k] +
                         after.rho_prev[k] * chemical_energy(spec, after.composition(k));
    const double e_old = before.rho[k] * before.e_s[k] +
                         before.rho_prev[k] * chemical_energy(spec, before.composition(k));
    double flux_sum = 0.0;
    double div_u = 0.0;
    for (std::size_t f : {grid.left_face(k), grid.right_face(k)}) {
      const double normal = grid.outward_normal(k, f);
      const double fn = after.mass_flux[f];
      const double e_up = after.e_s[upstream_cell(grid, f, fn)];
      flux_sum += normal * (fn * e_up + before.mass_flux[f] * chemical_energy_face[f]);
      div_u += normal * after.u[f];
    }
    r[k] = (e_new - e_old) / dt + (flux_sum + after.p[k] * div_u) / vol - source[k];
  }
  return r;
}

std::vector<double> enthalpy_residual(const StaggeredGrid& grid, const FieldState& before,
                                      const FieldState& after,
                                      std::span<const double> heat_and_source, double dt) {
  std::vector<double> r(grid.n_cells());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double vol = grid.cell_volume(k);
    double conv = 0.0;
    double u_grad_p = 0.0;
    for (std::size_t f : {grid.left_face(k), grid.right_face(k)}) {
      const double normal = grid.outward_normal(k, f);
      const double un = normal * after.u[f];
      const std::size_t up = upstream_cell(grid, f, after.u[f]);
      conv += after.rho[up] * after.h_s[up] * un;
      u_grad_p += (after.p[up] - after.p[k]) * un;
    }
    r[k] = (after.rho[k] * after.h_s[k] - before.rho[k] * before.h_s[k]) / dt -
           (after.p[k] - before.p[k]) / dt + (conv - u_grad_p) / vol - heat_and_source[k];
  }
  return r;
}

}  // namespace deflag
