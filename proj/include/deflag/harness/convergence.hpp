#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "deflag/harness/config.hpp"
#include "deflag/harness/errors.hpp"

namespace deflag {

struct MeshResult {
  std::size_t n_cells = 0;
  double h = 0.0;
  double epsilon = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  double max_cfl = 0.0;
  double max_energy_drift = 0.0;
  FieldErrors errors;
  double burnt_distance = 0.0;
  double wall_seconds = 0.0;
  bool ok = false;
  std::string failure;  // empty when ok
};

struct ConvergenceReport {
  LimiterScheme scheme = LimiterScheme::upwind;
  std::vector<MeshResult> meshes;
  std::vector<FieldErrors> pair_orders;  // between consecutive successful meshes
  FieldErrors fitted_order;              // least-squares slope of log e against log h
  // Calibration metadata.
  double gamma = 0.0;
  double cfl = 0.0;
  double epsilon_per_h = 0.0;
  double s_max = 0.0;
  std::string time_mode;

  bool all_ok() const;
};

/// log(e_i / e_{i+1}) / log(h_i / h_{i+1}).
double pair_order(double h_coarse, double e_coarse, double h_fine, double e_fine);
/// Least-squares slope of log(e) against log(h).
double fitted_order(std::span<const double> h, std::span<const double> e);

/// Runs `base` on every mesh (same CFL, epsilon proportional to h), in
/// parallel when `parallel` is set. Case failures are recorded, not thrown.
/// Requires an oracle-initialized case and strictly refining meshes.
ConvergenceReport convergence_study(const CaseConfig& base, const std::vector<std::size_t>& meshes,
                                    bool parallel = true);

/// One row per mesh with errors, orders and the calibration metadata in `#` lines.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

}  // namespace deflag
