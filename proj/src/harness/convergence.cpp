#include "deflag/harness/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "deflag/errors.hpp"
#include "deflag/harness/run.hpp"

namespace deflag {
namespace {

MeshResult run_mesh(CaseConfig cfg, std::size_t n_cells) {
  cfg.n_cells = n_cells;
  MeshResult m;
  m.n_cells = n_cells;
  m.h = cfg.spacing();
  m.epsilon = cfg.effective_epsilon();
  try {
    RunResult r = run_case(cfg);
    m.dt = r.setup.dt;
    m.steps = r.setup.n_steps;
    for (const auto& d : r.diagnostics) {
      m.max_cfl = std::max(m.max_cfl, d.cfl);
      m.max_energy_drift = std::max(m.max_energy_drift, d.energy_drift);
    }
    m.errors = l1_errors(r.setup.grid, r.setup.spec, r.final_state, *r.setup.pattern, cfg.x0);
    m.burnt_distance = burnt_zone_distance(r.setup.grid, r.setup.spec, r.final_state);
    m.wall_seconds = r.wall_seconds;
    m.ok = true;
  } catch (const std::exception& e) {
    m.failure = e.what();
  }
  return m;
}

template <typename F>
FieldErrors map_fields(F&& f) {
  return {f(&FieldErrors::p), f(&FieldErrors::u),      f(&FieldErrors::rho),
          f(&FieldErrors::y_fuel), f(&FieldErrors::G), f(&FieldErrors::T)};
}

}  // namespace

bool ConvergenceReport::all_ok() const {
  return std::all_of(meshes.begin(), meshes.end(), [](const MeshResult& m) { return m.ok; });
}

double pair_order(double h_coarse, double e_coarse, double h_fine, double e_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

double fitted_order(std::span<const double> h, std::span<const double> e) {
  const std::size_t n = h.size();
  if (n < 2 || e.size() != n) return std::nan("");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += std::log(h[i]);
    sy += std::log(e[i]);
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(e[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceReport convergence_study(const CaseConfig& base, const std::vector<std::size_t>& meshes,
                                    bool parallel) {
  base.validate();
  if (base.init != InitMode::riemann_oracle) {
    throw ConfigError("a convergence study needs the oracle initialization");
  }
  for (std::size_t i = 1; i < meshes.size(); ++i) {
    if (meshes[i] <= meshes[i - 1]) throw ConfigError("meshes must be strictly refining");
  }
  ConvergenceReport report;
  report.scheme = base.limiter.scheme;
  report.gamma = base.mixture.gamma;
  report.cfl = base.cfl;
  report.epsilon_per_h = base.epsilon_per_h;
  report.s_max = base.limiter.s_max;
  report.time_mode = to_string(base.effective_time_mode());

  if (parallel) {
    std::vector<std::future<MeshResult>> jobs;
    for (std::size_t n : meshes) jobs.push_back(std::async(std::launch::async, run_mesh, base, n));
    for (auto& j : jobs) report.meshes.push_back(j.get());
  } else {
    for (std::size_t n : meshes) report.meshes.push_back(run_mesh(base, n));
  }

  std::vector<const MeshResult*> good;
  for (const auto& m : report.meshes) {
    if (m.ok) good.push_back(&m);
  }
  for (std::size_t i = 1; i < good.size(); ++i) {
    const MeshResult& c = *good[i - 1];
    const MeshResult& f = *good[i];
    report.pair_orders.push_back(
        map_fields([&](double FieldErrors::*v) { return pair_order(c.h, c.errors.*v, f.h, f.errors.*v); }));
  }
  report.fitted_order = map_fields([&](double FieldErrors::*v) {
    std::vector<double> h, e;
    for (const MeshResult* m : good) {
      h.push_back(m->h);
      e.push_back(m->errors.*v);
    }
    return fitted_order(h, e);
  });
  return report;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& r) {
  out << "# scheme = " << to_string(r.scheme) << '\n'
      << "# time_mode = " << r.time_mode << '\n'
      << "# gamma = " << format_double(r.gamma) << '\n'
      << "# cfl = " << format_double(r.cfl) << '\n'
      << "# epsilon_per_h = " << format_double(r.epsilon_per_h) << '\n'
      << "# s_max = " << format_double(r.s_max) << '\n';
  const auto& o = r.fitted_order;
  out << "# fitted_order p=" << format_double(o.p) << " u=" << format_double(o.u)
      << " rho=" << format_double(o.rho) << " y_F=" << format_double(o.y_fuel)
      << " G=" << format_double(o.G) << " T=" << format_double(o.T) << '\n';
  out << "n_cells,h,epsilon,dt,steps,max_cfl,max_energy_drift,err_p,err_u,err_rho,err_y_F,err_G,"
         "err_T,burnt_distance,wall_seconds,ok,failure\n";
  for (const auto& m : r.meshes) {
    out << m.n_cells << ',' << format_double(m.h) << ',' << format_double(m.epsilon) << ','
        << format_double(m.dt) << ',' << m.steps << ',' << format_double(m.max_cfl) << ','
        << format_double(m.max_energy_drift) << ',' << format_double(m.errors.p) << ','
        << format_double(m.errors.u) << ',' << format_double(m.errors.rho) << ','
        << format_double(m.errors.y_fuel) << ',' << format_double(m.errors.G) << ','
        << format_double(m.errors.T) << ',' << format_double(m.burnt_distance) << ','
        << format_double(m.wall_seconds) << ',' << (m.ok ? 1 : 0) << ",\"" << m.failure << "\"\n";
  }
}

}  // namespace deflag
