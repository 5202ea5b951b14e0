#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "deflag/grid.hpp"
#include "deflag/tridiag.hpp"

namespace deflag {

enum class LimiterScheme { upwind, muscl, antidiffusive };
enum class NeighborPolicy { opposite_cells, upstream_cells };

std::string to_string(LimiterScheme scheme);
std::string to_string(NeighborPolicy policy);
LimiterScheme parse_limiter_scheme(const std::string& text);
NeighborPolicy parse_neighbor_policy(const std::string& text);

struct LimiterParams {
  LimiterScheme scheme = LimiterScheme::upwind;
  double zeta_minus = 1.0;
  double zeta_plus = 1.0;
  NeighborPolicy neighbor_policy = NeighborPolicy::opposite_cells;
  double s_max = 2.0;

  /// Throws ConfigError if a slope parameter leaves [0, 2] or s_max < 0.
  void validate() const;
};

// Face arrays are indexed by grid face and oriented left to right: a positive
// entry moves mass from left_cell(f) to right_cell(f). The flux leaving cell
// K through f is grid.outward_normal(K, f) * flux[f].

/// F_f = rho_upwind * u_f.
std::vector<double> primal_mass_flux(const StaggeredGrid& grid, std::span<const double> rho,
                                     std::span<const double> u);

/// Max over cells of dt / (rho_K |K|) * sum_f |F_f|.
double cfl_number(const StaggeredGrid& grid, std::span<const double> flux,
                  std::span<const double> rho_next, double dt);

/// Per-cell residual of (rho_new - rho_old)/dt + div(F), scaled by the cell terms.
std::vector<double> mass_balance_residual(const StaggeredGrid& grid,
                                          std::span<const double> rho_old,
                                          std::span<const double> rho_new,
                                          std::span<const double> flux, double dt);

/// Dual-cell density, |D_f| rho_D = sum of the half-cell masses adjacent to f.
std::vector<double> dual_density(const StaggeredGrid& grid, std::span<const double> rho);

/// Mass flux through the dual face at the centre of each cell (oriented left
/// to right): the mean of the cell's two primal fluxes. Throws SolveError if
/// the primal fluxes do not satisfy the mass balance linking rho_old to rho_new.
std::vector<double> dual_mass_flux(const StaggeredGrid& grid, std::span<const double> flux,
                                   std::span<const double> rho_old,
                                   std::span<const double> rho_new, double dt);

/// Per-face residual of the dual mass balance
/// |D_f| (rho_D_new - rho_D_old)/dt + dual_flux[right] - dual_flux[left].
std::vector<double> dual_mass_residual(const StaggeredGrid& grid,
                                       std::span<const double> dual_flux,
                                       std::span<const double> rho_old,
                                       std::span<const double> rho_new, double dt);

/// Upstream cell of a face; zero flux counts as flowing from the left.
std::size_t upstream_cell(const StaggeredGrid& grid, std::size_t face, double flux);
double upwind_face_value(const StaggeredGrid& grid, std::span<const double> y, std::size_t face,
                         double flux);

double muscl_face_value(const StaggeredGrid& grid, std::span<const double> y, std::size_t face,
                        std::span<const double> flux, const LimiterParams& params);

/// `rho_next` is the end-of-step density that sets the local Courant numbers.
double antidiffusive_face_value(const StaggeredGrid& grid, std::span<const double> y,
                                std::size_t face, std::span<const double> flux,
                                std::span<const double> rho_next, double dt,
                                const LimiterParams& params);

/// Face values for every face according to params.scheme. Boundary faces get
/// the adjacent cell value (they carry no flux).
std::vector<double> face_values(const StaggeredGrid& grid, std::span<const double> y,
                                std::span<const double> flux, std::span<const double> rho_next,
                                double dt, const LimiterParams& params);

/// (1/|K|) sum_f F_{K,f} y_f per cell.
std::vector<double> convect_divergence(const StaggeredGrid& grid, std::span<const double> y_face,
                                       std::span<const double> flux);

/// Explicit update (rho_old y - dt div(F y_face)) / rho_new.
std::vector<double> explicit_transport(const StaggeredGrid& grid, std::span<const double> y,
                                       std::span<const double> rho_old,
                                       std::span<const double> rho_new,
                                       std::span<const double> flux, double dt,
                                       const LimiterParams& params);

/// Matrix of |K| rho_new_K / dt y_K + sum_f F_{K,f} y_upwind(f), one row per
/// cell. Solve with `solve(m, rhs, grid.periodic())`.
Tridiagonal upwind_transport_matrix(const StaggeredGrid& grid, std::span<const double> rho_new,
                                    std::span<const double> flux, double dt);

/// Implicit upwind update of (rho_new y' - rho_old y)/dt + div(F y'_up) = 0.
std::vector<double> implicit_upwind_transport(const StaggeredGrid& grid,
                                              std::span<const double> y,
                                              std::span<const double> rho_old,
                                              std::span<const double> rho_new,
                                              std::span<const double> flux, double dt);

}  // namespace deflag
