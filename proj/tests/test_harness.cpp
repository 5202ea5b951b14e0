#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "deflag/errors.hpp"
#include "deflag/harness/config.hpp"
#include "deflag/harness/convergence.hpp"
#include "deflag/harness/csv.hpp"
#include "deflag/harness/errors.hpp"
#include "deflag/harness/initial.hpp"
#include "deflag/harness/run.hpp"
#include "deflag/harness/selfcheck.hpp"
#include "deflag/transport.hpp"

using namespace deflag;

namespace {

CaseConfig quiescent() {
  CaseConfig cfg;
  cfg.init = InitMode::uniform;
  cfg.n_cells = 40;
  cfg.t_start = 0.0;
  cfg.t_end = 2e-3;
  cfg.dt = 1e-4;
  return cfg;
}

std::string profile_text(const RunResult& r, const CaseConfig& cfg) {
  std::ostringstream out;
  write_profile_csv(out, r.setup.grid, r.setup.spec, r.final_state, cfg.resolved());
  return out.str();
}

// Position of the largest pressure jump between neighbouring cells.
double steepest_pressure_jump(const StaggeredGrid& g, const std::vector<double>& p, double from) {
  double best = 0.0, where = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    if (g.cell_center(k) < from) continue;
    const double d = std::abs(p[k + 1] - p[k]);
    if (d > best) {
      best = d;
      where = g.face_position(k + 1);
    }
  }
  return where;
}

}  // namespace

TEST_CASE("configuration parsing") {
  const CaseConfig cfg = parse_config(
      "# benchmark variant\n"
      "n_cells = 500   # finer\n"
      "scheme = muscl\n"
      "gamma = 1.3\n"
      "molar_fuel = 0.3\n"
      "reaction = off\n");
  CHECK(cfg.n_cells == 500);
  CHECK(cfg.limiter.scheme == LimiterScheme::muscl);
  CHECK(cfg.mixture.gamma == 1.3);
  CHECK(cfg.molar_right[fuel] == 0.3);
  CHECK_FALSE(cfg.reaction);
  CHECK(cfg.effective_time_mode() == TimeMode::explicit_limited);
  CHECK(CaseConfig{}.effective_time_mode() == TimeMode::implicit_upwind);

  CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_cells = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_cells 250\n"), ConfigError);
}

TEST_CASE("resolved configuration round-trips") {
  CaseConfig cfg;
  cfg.set("scheme", "antidiffusive");
  cfg.set("cfl", "0.3");
  cfg.set("epsilon_per_h", "0.1234567890123456789");
  std::string text;
  for (const auto& [k, v] : cfg.resolved()) text += k + " = " + v + "\n";
  const CaseConfig back = parse_config(text);
  CHECK(back.resolved() == cfg.resolved());
  CHECK(back.epsilon_per_h == cfg.epsilon_per_h);
}

TEST_CASE("configuration validation") {
  CaseConfig cfg;
  cfg.t_end = cfg.t_start;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = CaseConfig{};
  cfg.set("scheme", "muscl");
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.set("time_mode", "implicit_upwind");
  CHECK_NOTHROW(cfg.validate());
  CHECK_NOTHROW(CaseConfig{}.validate());
}

TEST_CASE("L1 error norms") {
  const StaggeredGrid g(10, 0.0, 1.0);
  std::vector<double> exact(10), shifted(10);
  for (std::size_t k = 0; k < 10; ++k) {
    exact[k] = std::sin(static_cast<double>(k));
    shifted[k] = exact[k] + 0.25;
  }
  CHECK(l1_cell_error(g, exact, exact) == 0.0);
  CHECK(l1_cell_error(g, shifted, exact) == doctest::Approx(0.25));
  std::vector<double> scaled(10);
  for (std::size_t k = 0; k < 10; ++k) scaled[k] = exact[k] + 3.0 * (shifted[k] - exact[k]);
  CHECK(l1_cell_error(g, scaled, exact) == doctest::Approx(3.0 * l1_cell_error(g, shifted, exact)));

  // The exact initial data of the benchmark has zero error except through
  // the level shift of the density; with t_start = 0.002 the oracle error of
  // pressure, G and fuel fraction vanishes.
  const PreparedCase pc = prepare_case(CaseConfig{});
  const FieldErrors e = l1_errors(pc.grid, pc.spec, pc.state, *pc.pattern, 0.0);
  CHECK(e.p < 1e-9);
  CHECK(e.G < 1e-15);
  CHECK(e.y_fuel < 1e-15);
  CHECK(e.u < 1e-9);
}

TEST_CASE("orders of convergence") {
  CHECK(pair_order(0.1, 4.0, 0.05, 2.0) == doctest::Approx(1.0));
  const std::vector<double> h{1.0, 0.5, 0.25, 0.125};
  std::vector<double> e;
  for (double v : h) e.push_back(3.0 * std::sqrt(v));
  CHECK(fitted_order(h, e) == doctest::Approx(0.5));
}

TEST_CASE("time step lands on the end time") {
  CaseConfig cfg;
  const PreparedCase pc = prepare_case(cfg);
  CHECK(pc.dt * static_cast<double>(pc.n_steps) ==
        doctest::Approx(cfg.t_end - cfg.t_start).epsilon(1e-14));
  const auto flux = primal_mass_flux(pc.grid, pc.state.rho_prev, pc.state.u);
  CHECK(cfl_number(pc.grid, flux, pc.state.rho_prev, pc.dt) <= cfg.cfl + 1e-12);
  CHECK(pc.rho_unburnt == pc.pattern->rho_unburnt);
  CHECK(pc.epsilon == doctest::Approx(cfg.epsilon_per_h * 4.5 / 250.0));

  const auto balance =
      mass_balance_residual(pc.grid, pc.state.rho_prev, pc.state.rho, pc.state.mass_flux, pc.dt);
  for (std::size_t k = 0; k < balance.size(); ++k) {
    CHECK(std::abs(balance[k]) * pc.dt / (pc.grid.cell_volume(k) * pc.state.rho[k]) < 1e-13);
  }
}

TEST_CASE("quiescent case stays at rest") {
  const CaseConfig cfg = quiescent();
  const RunResult r = run_case(cfg);
  CHECK(r.setup.n_steps == 20);
  const FieldState& a = r.setup.state;
  const FieldState& b = r.final_state;
  for (std::size_t k = 0; k < b.n_cells(); ++k) {
    CHECK(std::abs(b.rho[k] - a.rho[k]) <= 1e-12 * a.rho[k]);
    CHECK(std::abs(b.p[k] - a.p[k]) <= 1e-12 * a.p[k]);
    CHECK(std::abs(b.e_s[k] - a.e_s[k]) <= 1e-12 * a.e_s[k]);
    CHECK(b.G[k] == a.G[k]);
    CHECK(b.y_fuel[k] == a.y_fuel[k]);
  }
  for (double u : b.u) CHECK(std::abs(u) <= 1e-12);
  for (const auto& d : r.diagnostics) CHECK(d.internal_energy_residual == 0.0);
}

TEST_CASE("benchmark run conserves energy and keeps the gates") {
  CaseConfig cfg;
  cfg.t_end = cfg.t_start + 1.2e-3;  // a little over 100 steps at 250 cells
  const RunResult r = run_case(cfg);
  CHECK(r.setup.n_steps >= 100);
  for (const auto& d : r.diagnostics) {
    CHECK(d.energy_drift < 1e-9);
    CHECK(d.internal_energy_residual < 10.0 * cfg.correction.nonlinear_tol);
    CHECK(d.min_rho > 0.0);
    CHECK(d.min_e_s > 0.0);
    CHECK(d.unit_sum_error <= 1e-10);
    CHECK(d.min_fraction >= -1e-10);
  }
}

TEST_CASE("wave positions of a fine anti-diffusive run follow the oracle") {
  CaseConfig cfg;
  cfg.n_cells = 500;
  cfg.set("scheme", "antidiffusive");
  const RunResult r = run_case(cfg);
  const WavePattern& w = *r.setup.pattern;
  const double h = r.setup.grid.spacing();
  const double t = r.final_state.t;
  const double precursor = steepest_pressure_jump(r.setup.grid, r.final_state.p, 0.0);
  CHECK(std::abs(precursor - w.precursor_speed * t) < 3.0 * h);

  double flame = 0.0;
  for (std::size_t k = 0; k + 1 < cfg.n_cells; ++k) {
    if (r.final_state.G[k] < 0.5 && r.final_state.G[k + 1] >= 0.5) {
      flame = r.setup.grid.face_position(k + 1);
      break;
    }
  }
  CHECK(std::abs(flame - w.reactive_speed * t) < 5.0 * h);
}

TEST_CASE("upwind errors are in the range of the reference table") {
  const RunResult r = run_case(CaseConfig{});
  const FieldErrors e = l1_errors(r.setup.grid, r.setup.spec, r.final_state, *r.setup.pattern, 0.0);
  CHECK(e.rho > 0.769 / 2.0);
  CHECK(e.rho < 0.769 * 2.0);
  CHECK(e.u > 217.0 / 2.0);
  CHECK(e.u < 217.0 * 2.0);
  CHECK(e.p > 1.65e5 / 2.0);
  CHECK(e.p < 1.65e5 * 2.0);
}

TEST_CASE("two-mesh orders") {
  CaseConfig cfg;
  const ConvergenceReport up = convergence_study(cfg, {250, 500});
  REQUIRE(up.all_ok());
  CHECK(up.pair_orders.at(0).rho >= 0.25);
  CHECK(up.pair_orders.at(0).rho <= 0.6);
  for (const char* scheme : {"muscl", "antidiffusive"}) {
    cfg.set("scheme", scheme);
    const ConvergenceReport rep = convergence_study(cfg, {250, 500});
    REQUIRE(rep.all_ok());
    CHECK(rep.pair_orders.at(0).rho >= 0.6);
    CHECK(rep.pair_orders.at(0).rho <= 1.1);
  }
  CHECK_THROWS_AS(convergence_study(cfg, {500, 250}), ConfigError);
}

TEST_CASE("linear advection accuracy ranks the limiters") {
  // Periodic square wave at constant velocity and density, exact solution known.
  for (std::size_t n : {100u, 200u, 400u}) {
    const StaggeredGrid g(n, 0.0, 1.0, BoundaryKind::periodic);
    const std::vector<double> rho(n, 1.0), flux(n, 1.0);
    const double dt = 0.4 * g.spacing();
    const std::size_t steps = n / 2;  // translate by 0.2
    auto square = [&](double shift) {
      std::vector<double> y(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double x = std::fmod(g.cell_center(k) - shift + 1.0, 1.0);
        y[k] = x > 0.2 && x < 0.5 ? 1.0 : 0.0;
      }
      return y;
    };
    const auto exact = square(dt * static_cast<double>(steps));
    double errors[3];
    int i = 0;
    for (auto scheme : {LimiterScheme::upwind, LimiterScheme::muscl, LimiterScheme::antidiffusive}) {
      LimiterParams p;
      p.scheme = scheme;
      auto y = square(0.0);
      for (std::size_t s = 0; s < steps; ++s) y = explicit_transport(g, y, rho, rho, flux, dt, p);
      errors[i++] = l1_cell_error(g, y, exact);
    }
    CHECK(errors[2] <= errors[1]);
    CHECK(errors[1] <= errors[0]);
  }
}

TEST_CASE("runs are deterministic") {
  CaseConfig cfg;
  cfg.n_cells = 120;
  cfg.set("scheme", "muscl");
  const std::string a = profile_text(run_case(cfg), cfg);
  const std::string b = profile_text(run_case(cfg), cfg);
  CHECK(a == b);
}

TEST_CASE("CSV output embeds the configuration and round-trips") {
  CaseConfig cfg;
  cfg.n_cells = 60;
  const RunResult r = run_case(cfg);
  const std::string text = profile_text(r, cfg);
  CHECK(text.find("# epsilon_per_h = ") != std::string::npos);
  CHECK(text.find("x_center,rho,p,u_face_interp,T,e_s,h_s,y_F,y_O,y_N,y_P,z,G\n") !=
        std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "deflag_harness_test";
  const std::string path = (dir / "profile.csv").string();
  write_profile_file(path, r.setup.grid, r.setup.spec, r.final_state, cfg.resolved());
  const ProfileTable table = read_profile_csv(path);
  REQUIRE(table.rows.size() == 60);
  const auto rho = table.column("rho");
  for (std::size_t k = 0; k < 60; ++k) CHECK(rho[k] == r.final_state.rho[k]);
  CHECK_THROWS_AS(table.column("missing"), ConfigError);

  std::ostringstream diag;
  write_diagnostics_csv(diag, r.diagnostics, cfg.resolved());
  CHECK(diag.str().find("step,t,dt,cfl,E_total") != std::string::npos);

  CaseConfig restart = quiescent();
  restart.n_cells = 60;
  restart.init = InitMode::profile;
  restart.profile_path = path;
  const PreparedCase pc = prepare_case(restart);
  for (std::size_t k = 0; k < 60; ++k) {
    CHECK(pc.state.rho_prev[k] == r.final_state.rho[k]);
    CHECK(pc.state.p[k] == r.final_state.p[k]);
    CHECK(pc.state.G[k] == r.final_state.G[k]);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("gate violations abort with the step index") {
  CaseConfig cfg;
  cfg.n_cells = 50;
  cfg.energy_drift_tol = 1e-300;
  try {
    run_case(cfg);
    FAIL("expected a step failure");
  } catch (const StepError& e) {
    CHECK(e.step() == 1);
    CHECK(std::string(e.what()).find("energy") != std::string::npos);
  }
}

TEST_CASE("self-check battery passes") {
  for (const auto& c : run_self_checks()) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}
