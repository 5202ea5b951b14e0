#include "deflag/harness/csv.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "deflag/errors.hpp"
#include "deflag/harness/config.hpp"

namespace deflag {
namespace {

const std::vector<std::string> profile_columns{"x_center", "rho", "p",   "u_face_interp", "T",
                                               "e_s",      "h_s", "y_F", "y_O",           "y_N",
                                               "y_P",      "z",   "G"};

void write_header(std::ostream& out, const ResolvedConfig& config) {
  for (const auto& [key, value] : config) out << "# " << key << " = " << value << '\n';
}

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream out(target);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  writer(out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

void write_profile_csv(std::ostream& out, const StaggeredGrid& grid, const MixtureSpec& spec,
                       const FieldState& state, const ResolvedConfig& config) {
  write_header(out, config);
  for (std::size_t i = 0; i < profile_columns.size(); ++i) {
    out << (i ? "," : "") << profile_columns[i];
  }
  out << '\n';
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    const double u = 0.5 * (state.u[grid.left_face(k)] + state.u[grid.right_face(k)]);
    const double T = temperature(spec, state.e_s[k], mixture_gas_constant(spec, state.composition(k)));
    write_row(out, {grid.cell_center(k), state.rho[k], state.p[k], u, T, state.e_s[k],
                    state.h_s[k], state.y_fuel[k], state.y_oxidant[k], state.y_neutral[k],
                    state.y_product[k], state.z[k], state.G[k]});
  }
}

void write_diagnostics_csv(std::ostream& out, const std::vector<StepDiagnostics>& diagnostics,
                           const ResolvedConfig& config) {
  write_header(out, config);
  out << "step,t,dt,cfl,E_total,energy_drift,mass_total,newton_iterations,correction_residual,"
         "used_fallback,internal_energy_residual,min_rho,min_e_s,min_fraction,unit_sum_error,"
         "min_G,max_G,heat_release,compensation\n";
  for (const auto& d : diagnostics) {
    out << d.step << ',';
    write_row(out, {d.t, d.dt, d.cfl, d.energy, d.energy_drift, d.mass,
                    static_cast<double>(d.newton_iterations), d.correction_residual,
                    d.used_fallback ? 1.0 : 0.0, d.internal_energy_residual, d.min_rho, d.min_e_s,
                    d.min_fraction, d.unit_sum_error, d.min_G, d.max_G, d.heat_release,
                    d.compensation});
  }
}

void write_profile_file(const std::string& path, const StaggeredGrid& grid,
                        const MixtureSpec& spec, const FieldState& state,
                        const ResolvedConfig& config) {
  write_file(path, [&](std::ostream& out) { write_profile_csv(out, grid, spec, state, config); });
}

void write_diagnostics_file(const std::string& path,
                            const std::vector<StepDiagnostics>& diagnostics,
                            const ResolvedConfig& config) {
  write_file(path, [&](std::ostream& out) { write_diagnostics_csv(out, diagnostics, config); });
}

std::vector<double> ProfileTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ConfigError("profile has no column '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& row : rows) values.push_back(row[idx]);
  return values;
}

ProfileTable read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile " + path);
  ProfileTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (table.columns.empty()) {
      table.columns = std::move(cells);
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(table.columns.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": bad number '" + c + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw ConfigError("profile " + path + " is empty");
  return table;
}

}  // namespace deflag
