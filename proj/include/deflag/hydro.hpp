#pragma once

#include <span>
#include <vector>

#include "deflag/grid.hpp"
#include "deflag/state.hpp"
#include "deflag/thermo.hpp"

namespace deflag {

struct CorrectionSolveConfig {
  double nonlinear_tol = 1e-12;  // on the scaled pressure-equation residual
  int max_iterations = 100;
  double under_relaxation = 0.8;  // step length of the fallback iteration

  void validate() const;
};

/// (p_right - p_left) / |D_f| on velocity faces, 0 on wall faces.
std::vector<double> pressure_gradient(const StaggeredGrid& grid, std::span<const double> p);

/// (u_right_face - u_left_face) / |K| per cell.
std::vector<double> velocity_divergence(const StaggeredGrid& grid, std::span<const double> u);

/// grad * sqrt(rho_dual_n / rho_dual_prev) per face.
std::vector<double> scale_pressure_gradient(std::span<const double> grad,
                                            std::span<const double> rho_dual_n,
                                            std::span<const double> rho_dual_prev);

/// Implicit dual-cell momentum balance
///   |D| (rho_D^n u~ - rho_D^{n-1} u^n)/dt + sum_eps F_eps u~_eps + |D| grad = 0
/// with centred dual-face velocities. Returns u~ (0 on wall faces).
std::vector<double> predict_velocity(const StaggeredGrid& grid,
                                     std::span<const double> rho_dual_prev,
                                     std::span<const double> rho_dual, std::span<const double> u,
                                     std::span<const double> dual_flux,
                                     std::span<const double> scaled_grad, double dt);

/// Per-face residual of the prediction equation (for verification).
std::vector<double> prediction_residual(const StaggeredGrid& grid,
                                        std::span<const double> rho_dual_prev,
                                        std::span<const double> rho_dual,
                                        std::span<const double> u,
                                        std::span<const double> dual_flux,
                                        std::span<const double> scaled_grad,
                                        std::span<const double> u_tilde, double dt);

struct CorrectionResult {
  std::vector<double> u, rho, p, h_s, e_s, mass_flux;
  int iterations = 0;
  double residual = 0.0;  // scaled pressure-equation residual at exit
  bool used_fallback = false;
};

/// Coupled velocity correction, upwind mass balance and sensible-enthalpy
/// balance with the ideal-gas closure. The velocity is eliminated to give a
/// scalar pressure equation solved by Newton (relaxed iteration as fallback);
/// the density then follows from a linear upwind mass balance.
/// `rho`, `p`: level n; `rho_dual`: level-n dual density; `source`: per-cell
/// reaction heat plus kinetic compensation (W/m^3).
CorrectionResult correction_solve(const StaggeredGrid& grid, double gamma,
                                  std::span<const double> rho, std::span<const double> p,
                                  std::span<const double> rho_dual,
                                  std::span<const double> u_tilde,
                                  std::span<const double> scaled_grad,
                                  std::span<const double> source, double dt,
                                  const CorrectionSolveConfig& cfg);

/// Per-cell residual of the pressure equation for a candidate (p, u).
std::vector<double> pressure_equation_residual(const StaggeredGrid& grid, double gamma,
                                               std::span<const double> p_old,
                                               std::span<const double> p_new,
                                               std::span<const double> u_new,
                                               std::span<const double> source, double dt);

/// Linear upwind mass balance |K|(rho' - rho)/dt + sum_f rho'_up u_{K,f} = 0.
std::vector<double> solve_mass_balance(const StaggeredGrid& grid, std::span<const double> rho,
                                       std::span<const double> u, double dt);

/// R_f = |D_f| rho_D^{n-1} (u~ - u^n)^2 / (2 dt).
std::vector<double> kinetic_residuals(const StaggeredGrid& grid,
                                      std::span<const double> rho_dual_prev,
                                      std::span<const double> u_tilde, std::span<const double> u,
                                      double dt);

/// S_K = (1/|K|) * 1/2 * sum of R over the faces of K; a wall face gives its
/// whole residual to its only cell.
std::vector<double> compensation_source(const StaggeredGrid& grid, std::span<const double> R);

/// Face kinetic energy 1/2 rho_D u^2 + dt^2 grad^2 / (2 rho_D), where rho_D
/// is the dual density one level below the velocity.
std::vector<double> face_kinetic_energy(std::span<const double> rho_dual_prev,
                                        std::span<const double> u, std::span<const double> grad,
                                        double dt);

/// (e_k)_K = (1/(2|K|)) sum_f |D_f| (e_k)_f for the state's own level.
std::vector<double> cell_kinetic_energy(const StaggeredGrid& grid, const FieldState& state,
                                        double dt);

/// Kinetic flux through each primal face, the mean of the two adjacent
/// dual-face fluxes F_eps (1/2 u~ u~) (conservative by construction).
std::vector<double> kinetic_energy_flux(const StaggeredGrid& grid,
                                        std::span<const double> dual_flux,
                                        std::span<const double> u_tilde);

struct EnergyBreakdown {
  double sensible = 0.0;
  double chemical = 0.0;
  double kinetic = 0.0;
  double total() const { return sensible + chemical + kinetic; }
};

/// E^n = sum |K| (rho^n e_s^n + rho^{n-1} sum dh y^n) + sum |D_f| (e_k)_f.
EnergyBreakdown energy_breakdown(const StaggeredGrid& grid, const MixtureSpec& spec,
                                 const FieldState& state, double dt);
double total_energy(const StaggeredGrid& grid, const MixtureSpec& spec, const FieldState& state,
                    double dt);

/// Per-cell residual of the discrete internal-energy balance across one
/// completed step. `chemical_energy_face` holds the formation-energy face
/// values used by the reactive step; `source` is S (compensation only).
std::vector<double> internal_energy_residual(const StaggeredGrid& grid, const MixtureSpec& spec,
                                             const FieldState& before, const FieldState& after,
                                             std::span<const double> chemical_energy_face,
                                             std::span<const double> source, double dt);

/// Per-cell residual of the sensible-enthalpy balance across one step,
/// evaluated from its own definition (upwind rho h_s and upwind p in u.grad p).
std::vector<double> enthalpy_residual(const StaggeredGrid& grid, const FieldState& before,
                                      const FieldState& after,
                                      std::span<const double> heat_and_source, double dt);

}  // namespace deflag
