#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "deflag/errors.hpp"
#include "deflag/hydro.hpp"
#include "deflag/transport.hpp"

using namespace deflag;

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

LimiterParams muscl_params(double zm = 1.0, double zp = 1.0) {
  LimiterParams p;
  p.scheme = LimiterScheme::muscl;
  p.zeta_minus = zm;
  p.zeta_plus = zp;
  return p;
}

LimiterParams antidiffusive_params(double s_max) {
  LimiterParams p;
  p.scheme = LimiterScheme::antidiffusive;
  p.s_max = s_max;
  return p;
}

// Balanced random primal data: rho_new from the upwind mass balance.
struct BalancedData {
  std::vector<double> rho_old, rho_new, u, flux;
  double dt;
};

BalancedData balanced(const StaggeredGrid& g, std::mt19937_64& rng, double dt) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  BalancedData b;
  b.dt = dt;
  for (std::size_t k = 0; k < g.n_cells(); ++k) b.rho_old.push_back(1.0 + 0.5 * d(rng));
  b.u.assign(g.n_faces(), 0.0);
  for (std::size_t f = 0; f < g.n_faces(); ++f) {
    if (!g.is_boundary_face(f)) b.u[f] = 0.3 * d(rng);
  }
  b.rho_new = solve_mass_balance(g, b.rho_old, b.u, dt);
  b.flux = primal_mass_flux(g, b.rho_new, b.u);
  return b;
}

}  // namespace

TEST_CASE("primal mass flux") {
  const StaggeredGrid g(3, 0.0, 3.0);
  std::vector<double> rho{2.0, 2.0, 2.0}, u(4, 0.0);
  for (double f : primal_mass_flux(g, rho, u)) CHECK(f == 0.0);
  u[1] = 3.0;
  CHECK(primal_mass_flux(g, rho, u)[1] == doctest::Approx(6.0));
  rho = {1.0, 5.0, 5.0};
  u[1] = -1.0;
  CHECK(primal_mass_flux(g, rho, u)[1] == doctest::Approx(-5.0));
}

TEST_CASE("CFL number") {
  const StaggeredGrid g(3, 0.0, 3.0);
  const std::vector<double> rho{1.0, 1.0, 1.0};
  std::vector<double> flux(4, 0.0);
  CHECK(cfl_number(g, flux, rho, 0.25) == 0.0);
  flux = {0.0, 1.0, -1.0, 0.0};
  CHECK(cfl_number(g, flux, rho, 0.25) == doctest::Approx(0.5));
  CHECK(cfl_number(g, flux, rho, 0.75) == doctest::Approx(3.0 * cfl_number(g, flux, rho, 0.25)));
}

TEST_CASE("dual mass flux for a steady uniform flow") {
  for (auto kind : {BoundaryKind::periodic}) {
    const StaggeredGrid g(8, 0.0, 1.0, kind);
    const std::vector<double> rho(8, 1.3), u(g.n_faces(), 2.0);
    const auto flux = primal_mass_flux(g, rho, u);
    const auto dual = dual_mass_flux(g, flux, rho, rho, 1e-3);
    for (double v : dual) CHECK(v == doctest::Approx(2.6));
  }
  const StaggeredGrid g(8, 0.0, 1.0);
  const std::vector<double> rho(8, 1.3), u(9, 0.0);
  for (double v : dual_mass_flux(g, primal_mass_flux(g, rho, u), rho, rho, 1e-3)) CHECK(v == 0.0);
}

TEST_CASE("dual mass balance holds for balanced primal data") {
  std::mt19937_64 rng(17);
  for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
    for (std::size_t n : {5u, 40u, 333u}) {
      const StaggeredGrid g(n, 0.0, 2.0, kind);
      const BalancedData b = balanced(g, rng, 0.01);
      const auto dual = dual_mass_flux(g, b.flux, b.rho_old, b.rho_new, b.dt);
      const auto r = dual_mass_residual(g, dual, b.rho_old, b.rho_new, b.dt);
      for (std::size_t f = 0; f < r.size(); ++f) {
        const double scale = g.dual_volume(f) * 2.0 / b.dt;
        CHECK(std::abs(r[f]) / scale < 1e-12);
      }
    }
  }
}

TEST_CASE("unbalanced primal fluxes are rejected") {
  const StaggeredGrid g(4, 0.0, 1.0);
  const std::vector<double> rho(4, 1.0), flux{0.0, 1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(dual_mass_flux(g, flux, rho, rho, 0.1), SolveError);
}

TEST_CASE("MUSCL face values") {
  const StaggeredGrid g(4, 0.0, 4.0);
  const std::vector<double> flux{0.0, 1.0, 1.0, 1.0, 0.0};
  // face 2 separates cells 1 and 2; upstream cell 1, its upstream neighbour 0.
  std::vector<double> y{0.0, 1.0, 2.0, 5.0};
  CHECK(muscl_face_value(g, y, 2, flux, muscl_params()) == doctest::Approx(1.5));
  y = {0.0, 1.0, 0.0, 0.0};
  CHECK(muscl_face_value(g, y, 2, flux, muscl_params()) == 1.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    for (double& v : y) v = d(rng);
    CHECK(muscl_face_value(g, y, 2, flux, muscl_params(0.0, 0.0)) == y[1]);
  }
}

TEST_CASE("MUSCL equals minmod on a uniform grid") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const StaggeredGrid g(6, 0.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> y(6);
    for (double& v : y) v = d(rng);
    const double sign = i % 2 ? 1.0 : -1.0;
    const std::vector<double> flux{0.0, sign, sign, sign, sign, sign, 0.0};
    for (std::size_t f = 2; f <= 4; ++f) {
      const std::size_t k = sign > 0 ? f - 1 : f;
      const std::size_t l = sign > 0 ? f : f - 1;
      const std::size_t m = sign > 0 ? f - 2 : f + 1;
      const double expected = y[k] + 0.5 * minmod(y[l] - y[k], y[k] - y[m]);
      CHECK(std::abs(muscl_face_value(g, y, f, flux, muscl_params()) - expected) <= 1e-15);
    }
  }
}

TEST_CASE("anti-diffusive face values") {
  const StaggeredGrid g(4, 0.0, 4.0);
  const std::vector<double> rho(4, 1.0);
  const std::vector<double> flux{0.0, 1.0, 1.0, 1.0, 0.0};
  const double dt = 0.5;  // nu = nu' = 0.5
  std::vector<double> y{1.0, 1.0, 0.0, 0.0};
  CHECK(antidiffusive_face_value(g, y, 2, flux, rho, dt, antidiffusive_params(10.0)) == 1.0);
  y = {1.0, 0.5, 0.0, 0.0};
  CHECK(antidiffusive_face_value(g, y, 2, flux, rho, dt, antidiffusive_params(10.0)) == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    for (double& v : y) v = d(rng);
    CHECK(antidiffusive_face_value(g, y, 2, flux, rho, dt, antidiffusive_params(0.0)) == y[1]);
  }
}

TEST_CASE("vector and per-face limiter paths agree") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
    const StaggeredGrid g(50, 0.0, 1.0, kind);
    for (int trial = 0; trial < 20; ++trial) {
      const BalancedData b = balanced(g, rng, 0.02);
      std::vector<double> y(50);
      for (double& v : y) v = d(rng) < 0.5 ? 0.0 : d(rng);
      for (const LimiterParams& p : {muscl_params(), muscl_params(0.4, 1.7), antidiffusive_params(2.0)}) {
        const auto faces = face_values(g, y, b.flux, b.rho_new, b.dt, p);
        for (std::size_t f = 0; f < g.n_faces(); ++f) {
          const double ref = p.scheme == LimiterScheme::muscl
                                 ? muscl_face_value(g, y, f, b.flux, p)
                                 : antidiffusive_face_value(g, y, f, b.flux, b.rho_new, b.dt, p);
          CHECK(faces[f] == ref);
        }
      }
    }
  }
}

TEST_CASE("convective divergence") {
  const StaggeredGrid g(4, 0.0, 2.0);
  std::vector<double> flux(5, 0.0), yf(5, 7.0);
  for (double v : convect_divergence(g, yf, flux)) CHECK(v == 0.0);
  flux[2] = 3.0;
  yf[2] = 2.0;
  const auto div = convect_divergence(g, yf, flux);
  CHECK(div[1] == doctest::Approx(2.0 * 3.0 / 0.5));
  CHECK(div[2] == doctest::Approx(-2.0 * 3.0 / 0.5));
  CHECK(div[0] == 0.0);
}

TEST_CASE("transport preserves constants") {
  std::mt19937_64 rng(4);
  for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
    const StaggeredGrid g(30, 0.0, 1.0, kind);
    const BalancedData b = balanced(g, rng, 0.02);
    const std::vector<double> y(30, 0.37);
    for (const LimiterParams& p :
         {LimiterParams{}, muscl_params(), antidiffusive_params(2.0)}) {
      for (double v : explicit_transport(g, y, b.rho_old, b.rho_new, b.flux, b.dt, p)) {
        CHECK(v == doctest::Approx(0.37).epsilon(1e-13));
      }
    }
    for (double v : implicit_upwind_transport(g, y, b.rho_old, b.rho_new, b.flux, b.dt)) {
      CHECK(v == doctest::Approx(0.37).epsilon(1e-13));
    }
  }
}

TEST_CASE("explicit transport satisfies the maximum principle") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const StaggeredGrid g(40, 0.0, 1.0, BoundaryKind::periodic);
  for (int trial = 0; trial < 100; ++trial) {
    BalancedData b = balanced(g, rng, 0.02);
    const double cfl = cfl_number(g, b.flux, b.rho_new, b.dt);
    if (cfl > 1.0) continue;
    std::vector<double> y(40);
    for (double& v : y) v = d(rng);
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    for (const LimiterParams& p : {LimiterParams{}, muscl_params(), antidiffusive_params(2.0)}) {
      for (double v : explicit_transport(g, y, b.rho_old, b.rho_new, b.flux, b.dt, p)) {
        CHECK(v >= *lo - 1e-12);
        CHECK(v <= *hi + 1e-12);
      }
    }
    for (double v : implicit_upwind_transport(g, y, b.rho_old, b.rho_new, b.flux, b.dt)) {
      CHECK(v >= *lo - 1e-12);
      CHECK(v <= *hi + 1e-12);
    }
  }
}

TEST_CASE("limiter parameters are validated") {
  CHECK_THROWS_AS(muscl_params(2.5, 1.0).validate(), ConfigError);
  CHECK_THROWS_AS(antidiffusive_params(-1.0).validate(), ConfigError);
  CHECK(parse_limiter_scheme("antidiffusive") == LimiterScheme::antidiffusive);
  CHECK_THROWS_AS(parse_limiter_scheme("weno"), ConfigError);
  CHECK(to_string(NeighborPolicy::upstream_cells) ==
        to_string(parse_neighbor_policy(to_string(NeighborPolicy::upstream_cells))));
}
