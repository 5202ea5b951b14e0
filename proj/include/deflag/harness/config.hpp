#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "deflag/chemistry.hpp"
#include "deflag/grid.hpp"
#include "deflag/hydro.hpp"
#include "deflag/thermo.hpp"
#include "deflag/transport.hpp"

namespace deflag {

enum class InitMode { riemann_oracle, uniform, profile };

std::string to_string(InitMode mode);

/// Everything a run needs. Keys of the text format are listed by resolved().
struct CaseConfig {
  // grid
  std::size_t n_cells = 250;
  double x_left = 0.0;
  double x_right = 4.5;
  BoundaryKind boundary = BoundaryKind::wall;

  MixtureSpec mixture;

  // scheme
  LimiterParams limiter;
  bool time_mode_auto = true;  // implicit for upwind, explicit for the limiters
  TimeMode time_mode = TimeMode::implicit_upwind;
  double epsilon_per_h = 3e-3;  // s/m; epsilon = epsilon_per_h * h when > 0
  double epsilon = 0.0;         // s; used when epsilon_per_h == 0
  double flame_speed = 63.0;    // m/s
  double rho_unburnt = 0.0;     // kg/m^3; 0 takes the oracle's unburnt density
  bool reaction = true;
  CorrectionSolveConfig correction;

  // time
  double cfl = 0.5;
  double dt = 0.0;  // fixed step when > 0
  double t_start = 0.002;
  double t_end = 0.005;

  // initial data
  InitMode init = InitMode::riemann_oracle;
  double p_right = 9.9e4;
  double T_right = 283.0;
  Composition molar_right{2.0 / 7.0, 1.0 / 7.0, 4.0 / 7.0, 0.0};
  double u_left = 0.0;
  double x0 = 0.0;
  double uniform_rho = 1.0;
  double uniform_p = 1e5;
  double uniform_u = 0.0;
  double uniform_G = 1.0;
  std::string profile_path;

  // gates and output
  double energy_drift_tol = 1e-8;
  std::size_t output_every = 0;  // steps between profile dumps; 0 = final only
  std::string output_dir = "out";

  /// Apply one key = value pair. Throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Consistency checks; throws ConfigError.
  void validate() const;

  TimeMode effective_time_mode() const;
  double effective_epsilon() const;
  double spacing() const { return (x_right - x_left) / static_cast<double>(n_cells); }
  ChemStepConfig chemistry_config(double rho_u) const;

  /// Every key with its current value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Parse `key = value` lines; `#` starts a comment.
CaseConfig parse_config(const std::string& text, CaseConfig base = {});
CaseConfig load_config_file(const std::string& path, CaseConfig base = {});

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

}  // namespace deflag
