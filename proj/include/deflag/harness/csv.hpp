#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "deflag/grid.hpp"
#include "deflag/harness/stepper.hpp"
#include "deflag/state.hpp"
#include "deflag/thermo.hpp"

namespace deflag {

using ResolvedConfig = std::vector<std::pair<std::string, std::string>>;

/// Columns: x_center, rho, p, u_face_interp, T, e_s, h_s, y_F, y_O, y_N, y_P, z, G.
void write_profile_csv(std::ostream& out, const StaggeredGrid& grid, const MixtureSpec& spec,
                       const FieldState& state, const ResolvedConfig& config);
void write_diagnostics_csv(std::ostream& out, const std::vector<StepDiagnostics>& diagnostics,
                           const ResolvedConfig& config);

/// Writes to a file, creating parent directories. Throws std::runtime_error on I/O failure.
void write_profile_file(const std::string& path, const StaggeredGrid& grid,
                        const MixtureSpec& spec, const FieldState& state,
                        const ResolvedConfig& config);
void write_diagnostics_file(const std::string& path,
                            const std::vector<StepDiagnostics>& diagnostics,
                            const ResolvedConfig& config);

/// A profile as read back: one row per cell in the profile column order.
struct ProfileTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Values of one column; throws ConfigError if it is missing.
  std::vector<double> column(const std::string& name) const;
};

/// Reads a profile CSV; `#` lines are skipped. Throws ConfigError on malformed input.
ProfileTable read_profile_csv(const std::string& path);

}  // namespace deflag
