#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "deflag/grid.hpp"
#include "deflag/harness/config.hpp"
#include "deflag/harness/stepper.hpp"
#include "deflag/oracle.hpp"
#include "deflag/state.hpp"

namespace deflag {

/// Everything needed to start stepping a configured case.
struct PreparedCase {
  StaggeredGrid grid;
  MixtureSpec spec;
  SchemeConfig scheme;
  FieldState state;
  double dt = 0.0;
  std::size_t n_steps = 0;
  double epsilon = 0.0;
  double rho_unburnt = 0.0;
  std::optional<WavePattern> pattern;  // set for oracle-initialized cases
};

/// The wave pattern of an oracle-initialized case. Throws OracleError.
WavePattern case_pattern(const CaseConfig& cfg);

/// Per-cell primitive data used to build a consistent initial state.
struct CellData {
  std::vector<double> rho, p, G;
  std::vector<Composition> y;
};

/// Builds the level-0 state from cell data (taken as level n-1) and face
/// velocities: the level-0 density follows from the upwind mass balance over
/// `dt`, so that the first step sees balanced fluxes. Pressure is kept.
FieldState build_initial_state(const StaggeredGrid& grid, const MixtureSpec& spec,
                               const CellData& cells, std::span<const double> u, double dt,
                               double t);

/// Constant step that lands on t_end: span / ceil(span / dt_target), where
/// dt_target comes from the CFL target against the initial fluxes (or the
/// configured fixed step).
double choose_time_step(const CaseConfig& cfg, const StaggeredGrid& grid,
                        std::span<const double> rho, std::span<const double> u);

/// Grid, initial data, time step and scheme settings for `cfg`.
/// Throws ConfigError or OracleError.
PreparedCase prepare_case(const CaseConfig& cfg);

}  // namespace deflag
