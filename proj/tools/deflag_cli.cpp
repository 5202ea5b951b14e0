#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "deflag/errors.hpp"
#include "deflag/harness/config.hpp"
#include "deflag/harness/convergence.hpp"
#include "deflag/harness/csv.hpp"
#include "deflag/harness/errors.hpp"
#include "deflag/harness/run.hpp"
#include "deflag/harness/selfcheck.hpp"
#include "deflag/kernels/kernels.hpp"

namespace {

using namespace deflag;

enum ExitCode { ok = 0, failure = 1, config_error = 2, step_failure = 3, oracle_failure = 4 };

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("config", opts.config_path, "Case file of key = value lines");
  cmd->add_option("-s,--set", opts.overrides, "Override a key, e.g. --set scheme=muscl")
      ->type_name("KEY=VALUE");
  cmd->add_option("-o,--output-dir", opts.output_dir, "Directory for CSV output");
}

CaseConfig load(const CommonOptions& opts) {
  CaseConfig cfg = opts.config_path.empty() ? CaseConfig{} : load_config_file(opts.config_path);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + kv + "' is not KEY=VALUE");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
  cfg.validate();
  return cfg;
}

std::string path_in(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void print_errors(const FieldErrors& e) {
  std::printf("L1 errors: rho %.6e  u %.6e  p %.6e  y_F %.6e  G %.6e  T %.6e\n", e.rho, e.u, e.p,
              e.y_fuel, e.G, e.T);
}

int cmd_run(const CommonOptions& opts) {
  const CaseConfig cfg = load(opts);
  const auto resolved = cfg.resolved();
  char name[64];
  RunObserver observer;
  if (cfg.output_every > 0) {
    observer = [&](const Simulation& sim, const StepDiagnostics& d) {
      if (d.step % cfg.output_every != 0) return;
      std::snprintf(name, sizeof name, "profile_%06zu.csv", d.step);
      write_profile_file(path_in(cfg.output_dir, name), sim.grid(), sim.spec(), sim.state(),
                         resolved);
    };
  }
  const RunResult r = run_case(cfg, observer);
  write_profile_file(path_in(cfg.output_dir, "profile_final.csv"), r.setup.grid, r.setup.spec,
                     r.final_state, resolved);
  write_diagnostics_file(path_in(cfg.output_dir, "diagnostics.csv"), r.diagnostics, resolved);

  double drift = 0.0;
  int newton = 0;
  for (const auto& d : r.diagnostics) {
    drift = std::max(drift, d.energy_drift);
    newton = std::max(newton, d.newton_iterations);
  }
  std::printf("%zu cells, %zu steps of %.6e s to t = %.6e s (%.2f s wall, %s kernels)\n",
              r.setup.grid.n_cells(), r.setup.n_steps, r.setup.dt, r.final_state.t,
              r.wall_seconds, std::string(kernels::isa_name(kernels::active().isa)).c_str());
  std::printf("max energy drift %.3e, max Newton iterations %d\n", drift, newton);
  if (r.setup.pattern) {
    print_errors(l1_errors(r.setup.grid, r.setup.spec, r.final_state, *r.setup.pattern, cfg.x0));
  }
  std::printf("output written to %s\n", cfg.output_dir.c_str());
  return ok;
}

std::vector<std::size_t> parse_meshes(const std::string& text) {
  std::vector<std::size_t> meshes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      meshes.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw ConfigError("bad mesh size '" + item + "'");
    }
  }
  return meshes;
}

int cmd_sweep(const CommonOptions& opts, const std::string& meshes_text,
              const std::vector<std::string>& schemes, bool serial) {
  const CaseConfig base = load(opts);
  const auto meshes = parse_meshes(meshes_text);
  bool all_ok = true;
  for (const auto& name : schemes) {
    CaseConfig cfg = base;
    cfg.set("scheme", name);
    const ConvergenceReport report = convergence_study(cfg, meshes, !serial);
    std::printf("%s (%s, cfl %g, epsilon/h %g s/m, gamma %g)\n", name.c_str(),
                report.time_mode.c_str(), report.cfl, report.epsilon_per_h, report.gamma);
    std::printf("  %6s %12s %12s %12s %12s %10s\n", "cells", "rho", "u", "p", "burnt dist", "wall s");
    for (const auto& m : report.meshes) {
      if (!m.ok) {
        std::printf("  %6zu failed: %s\n", m.n_cells, m.failure.c_str());
        continue;
      }
      std::printf("  %6zu %12.5e %12.5e %12.5e %12.5e %10.2f\n", m.n_cells, m.errors.rho,
                  m.errors.u, m.errors.p, m.burnt_distance, m.wall_seconds);
    }
    const auto& o = report.fitted_order;
    std::printf("  fitted orders: rho %.3f  u %.3f  p %.3f  y_F %.3f  G %.3f  T %.3f\n", o.rho, o.u,
                o.p, o.y_fuel, o.G, o.T);
    const std::string path = path_in(base.output_dir, "convergence_" + name + ".csv");
    std::filesystem::create_directories(base.output_dir);
    std::ofstream out(path);
    write_convergence_csv(out, report);
    all_ok = all_ok && report.all_ok();
  }
  return all_ok ? ok : step_failure;
}

int cmd_oracle(const CommonOptions& opts, double t_override) {
  const CaseConfig cfg = load(opts);
  const WavePattern w = case_pattern(cfg);
  const double t = t_override > 0.0 ? t_override : cfg.t_end;
  std::printf("precursor shock speed %.6f m/s, reactive shock speed %.6f m/s\n", w.precursor_speed,
              w.reactive_speed);
  const auto show = [&](const char* label, const GasState& g) {
    const PointState s = point_state(w.spec, g, 1.0);
    std::printf("%-12s rho %.6f  p %.3f  u %.6f  T %.3f  y = (%.7f, %.7f, %.7f, %.7f)\n", label,
                g.rho, g.p, g.u, s.T, g.y[fuel], g.y[oxidant], g.y[neutral], g.y[product]);
  };
  show("burnt", w.burnt);
  show("intermediate", w.intermediate);
  show("unburnt", w.right);
  std::printf("heat release %.6e J/kg, max jump residual %.3e, %d iterations\n", w.heat_release,
              w.max_residual(), w.iterations);

  const StaggeredGrid grid(cfg.n_cells, cfg.x_left, cfg.x_right, cfg.boundary);
  FieldState s = FieldState::zeros(grid);
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    const double a = grid.face_position(grid.left_face(k));
    const PointState p = average_solution(w, a, a + grid.cell_volume(k), t, cfg.x0);
    s.rho[k] = s.rho_prev[k] = p.gas.rho;
    s.p[k] = p.gas.p;
    s.e_s[k] = p.e_s;
    s.h_s[k] = p.h_s;
    s.set_composition(k, p.gas.y);
    s.z[k] = p.z;
    s.G[k] = p.G;
  }
  for (std::size_t f = 0; f < grid.n_faces(); ++f) {
    if (grid.is_boundary_face(f)) continue;
    const double x = grid.face_position(f);
    const double half = 0.5 * grid.dual_volume(f);
    s.u[f] = average_solution(w, x - half, x + half, t, cfg.x0).gas.u;
  }
  s.t = t;
  const std::string path = path_in(cfg.output_dir, "exact_profile.csv");
  write_profile_file(path, grid, w.spec, s, cfg.resolved());
  std::printf("exact cell averages at t = %g s written to %s\n", t, path.c_str());
  return ok;
}

int cmd_check() {
  bool all = true;
  for (const auto& c : run_self_checks()) {
    std::printf("%s  %-34s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    all = all && c.passed;
  }
  return all ? ok : failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered finite-volume solver for reactive Euler deflagrations"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Kernel variant: scalar or avx2 (default: best available)")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  CommonOptions run_opts, sweep_opts, oracle_opts;
  auto* run = app.add_subcommand("run", "Run one case and write profile and diagnostics CSV");
  add_common(run, run_opts);

  auto* sweep = app.add_subcommand("sweep", "Convergence study against the exact solution");
  add_common(sweep, sweep_opts);
  std::string meshes = "250,500,1000,2000";
  std::vector<std::string> schemes{"upwind", "muscl", "antidiffusive"};
  bool serial = false;
  sweep->add_option("--meshes", meshes, "Comma-separated cell counts, refining");
  sweep->add_option("--schemes", schemes, "Limiter schemes to study")->delimiter(',');
  sweep->add_flag("--serial", serial, "Run the meshes one after another");

  auto* oracle = app.add_subcommand("oracle", "Solve the exact wave pattern and write cell averages");
  add_common(oracle, oracle_opts);
  double oracle_t = 0.0;
  oracle->add_option("--time", oracle_t, "Sampling time in s (default: t_end)");

  auto* check = app.add_subcommand("check", "Run the invariant self-test battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (isa == "avx2" && !kernels::select(kernels::Isa::avx2)) {
      std::fprintf(stderr, "error: AVX2 kernels are not available on this machine\n");
      return config_error;
    }
    if (isa == "scalar") kernels::select(kernels::Isa::scalar);
    if (*run) return cmd_run(run_opts);
    if (*sweep) return cmd_sweep(sweep_opts, meshes, schemes, serial);
    if (*oracle) return cmd_oracle(oracle_opts, oracle_t);
    if (*check) return cmd_check();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return config_error;
  } catch (const StepError& e) {
    std::fprintf(stderr, "step failure at step %zu (residual %.3e): %s\n", e.step(), e.residual(),
                 e.what());
    return step_failure;
  } catch (const StateError& e) {
    std::fprintf(stderr, "invalid state: %s\n", e.what());
    return step_failure;
  } catch (const OracleError& e) {
    std::fprintf(stderr, "oracle failure: %s\n", e.what());
    return oracle_failure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return failure;
  }
  return failure;
}
