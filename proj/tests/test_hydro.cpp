#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "deflag/hydro.hpp"
#include "deflag/transport.hpp"

using namespace deflag;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

void zero_walls(const StaggeredGrid& g, std::vector<double>& u) {
  for (std::size_t f = 0; f < g.n_faces(); ++f) {
    if (g.is_boundary_face(f)) u[f] = 0.0;
  }
}

// Level n-1 and n densities linked by balanced fluxes, plus a velocity field.
struct Levels {
  std::vector<double> rho_prev, rho, u, flux, dual_flux, rho_dual_prev, rho_dual;
};

Levels random_levels(const StaggeredGrid& g, std::mt19937_64& rng, double dt) {
  Levels l;
  l.rho_prev = random_vector(g.n_cells(), rng, 0.5, 2.0);
  l.u = random_vector(g.n_faces(), rng, -1.0, 1.0);
  zero_walls(g, l.u);
  l.rho = solve_mass_balance(g, l.rho_prev, l.u, dt);
  l.flux = primal_mass_flux(g, l.rho, l.u);
  l.dual_flux = dual_mass_flux(g, l.flux, l.rho_prev, l.rho, dt);
  l.rho_dual_prev = dual_density(g, l.rho_prev);
  l.rho_dual = dual_density(g, l.rho);
  return l;
}

}  // namespace

TEST_CASE("pressure gradient") {
  const StaggeredGrid g(10, 0.0, 2.0);
  const std::vector<double> uniform(10, 3e5);
  for (double v : pressure_gradient(g, uniform)) CHECK(v == 0.0);
  std::vector<double> linear(10);
  for (std::size_t k = 0; k < 10; ++k) linear[k] = 1e5 + 250.0 * g.cell_center(k);
  const auto grad = pressure_gradient(g, linear);
  for (std::size_t f = 1; f < 10; ++f) CHECK(grad[f] == doctest::Approx(250.0).epsilon(1e-10));
}

TEST_CASE("gradient and divergence are dual") {
  std::mt19937_64 rng(6);
  for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
    for (std::size_t n : {10u, 101u, 1000u}) {
      const StaggeredGrid g(n, 0.0, 3.0, kind);
      const auto p = random_vector(n, rng, 1e4, 1e6);
      auto u = random_vector(g.n_faces(), rng, -100.0, 100.0);
      zero_walls(g, u);
      const auto div = velocity_divergence(g, u);
      const auto grad = pressure_gradient(g, p);
      double sum = 0.0, scale = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        sum += g.cell_volume(k) * p[k] * div[k];
        scale += std::abs(g.cell_volume(k) * p[k] * div[k]);
      }
      for (std::size_t f = 0; f < g.n_faces(); ++f) {
        sum += g.dual_volume(f) * u[f] * grad[f];
        scale += std::abs(g.dual_volume(f) * u[f] * grad[f]);
      }
      CHECK(std::abs(sum) / scale < 1e-12);
    }
  }
}

TEST_CASE("gradient scaling") {
  const std::vector<double> grad{0.0, 3.0, -2.0}, rho{1.0, 4.0, 2.0}, prev{1.0, 1.0, 2.0};
  const auto s = scale_pressure_gradient(grad, rho, prev);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(6.0));
  CHECK(s[2] == doctest::Approx(-2.0));
}

TEST_CASE("velocity prediction") {
  const double dt = 0.01;
  SUBCASE("constant velocity without gradient is preserved") {
    const StaggeredGrid g(16, 0.0, 1.0, BoundaryKind::periodic);
    const std::vector<double> rho(16, 1.2), u(16, 0.7), zero(16, 0.0);
    const auto flux = primal_mass_flux(g, rho, u);
    const auto dual = dual_mass_flux(g, flux, rho, rho, dt);
    const auto rd = dual_density(g, rho);
    for (double v : predict_velocity(g, rd, rd, u, dual, zero, dt)) {
      CHECK(v == doctest::Approx(0.7).epsilon(1e-14));
    }
  }
  SUBCASE("fluid at rest accelerates against the gradient") {
    const StaggeredGrid g(12, 0.0, 1.0);
    const std::vector<double> rho(12, 2.0), u(13, 0.0), dual(12, 0.0);
    std::vector<double> grad(13, 0.0);
    for (std::size_t f = 1; f < 12; ++f) grad[f] = 100.0 * static_cast<double>(f);
    const auto rd = dual_density(g, rho);
    const auto ut = predict_velocity(g, rd, rd, u, dual, grad, dt);
    for (std::size_t f = 1; f < 12; ++f) CHECK(ut[f] == doctest::Approx(-dt * grad[f] / 2.0));
    CHECK(ut[0] == 0.0);
    CHECK(ut[12] == 0.0);
  }
  SUBCASE("random data satisfies the discrete momentum balance") {
    std::mt19937_64 rng(44);
    for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
      const StaggeredGrid g(64, 0.0, 1.0, kind);
      const Levels l = random_levels(g, rng, dt);
      auto grad = random_vector(g.n_faces(), rng, -50.0, 50.0);
      zero_walls(g, grad);
      const auto ut = predict_velocity(g, l.rho_dual_prev, l.rho_dual, l.u, l.dual_flux, grad, dt);
      const auto r =
          prediction_residual(g, l.rho_dual_prev, l.rho_dual, l.u, l.dual_flux, grad, ut, dt);
      for (std::size_t f = 0; f < g.n_faces(); ++f) {
        CHECK(std::abs(r[f]) / (g.dual_volume(f) * 2.0 / dt) < 1e-12);
      }
    }
  }
}

TEST_CASE("kinetic energy balance of the prediction") {
  // |D| (rho^n u~^2 - rho^{n-1} u^2) / (2 dt) + sum F u~_f u~_g / 2 + |D| g u~ + R = 0
  std::mt19937_64 rng(90);
  const double dt = 0.02;
  for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
    const StaggeredGrid g(30, 0.0, 1.0, kind);
    const Levels l = random_levels(g, rng, dt);
    auto grad = random_vector(g.n_faces(), rng, -5.0, 5.0);
    zero_walls(g, grad);
    const auto ut = predict_velocity(g, l.rho_dual_prev, l.rho_dual, l.u, l.dual_flux, grad, dt);
    const auto R = kinetic_residuals(g, l.rho_dual_prev, ut, l.u, dt);
    for (std::size_t f = 0; f < g.n_faces(); ++f) {
      if (g.is_boundary_face(f)) continue;
      const std::size_t lc = g.left_cell(f);
      const std::size_t rc = g.right_cell(f);
      const double flux_r = l.dual_flux[rc] * 0.5 * ut[f] * ut[g.right_face(rc)];
      const double flux_l = l.dual_flux[lc] * 0.5 * ut[g.left_face(lc)] * ut[f];
      const double vol = g.dual_volume(f);
      const double balance = vol * (l.rho_dual[f] * ut[f] * ut[f] -
                                    l.rho_dual_prev[f] * l.u[f] * l.u[f]) / (2.0 * dt) +
                             flux_r - flux_l + vol * grad[f] * ut[f] + R[f];
      CHECK(std::abs(balance) / (vol / dt) < 1e-12);
    }
  }
}

TEST_CASE("kinetic residuals") {
  const StaggeredGrid g(8, 0.0, 1.0);
  std::mt19937_64 rng(3);
  const auto rho = random_vector(9, rng, 0.5, 2.0);
  auto u = random_vector(9, rng, -1.0, 1.0);
  for (double r : kinetic_residuals(g, rho, u, u, 0.1)) CHECK(r == 0.0);
  auto ut = u;
  for (double& v : ut) v += 0.1;
  auto ut4 = u;
  for (double& v : ut4) v += 0.4;
  const auto r1 = kinetic_residuals(g, rho, ut, u, 0.1);
  const auto r4 = kinetic_residuals(g, rho, ut4, u, 0.1);
  for (std::size_t f = 0; f < 9; ++f) {
    CHECK(r4[f] == doctest::Approx(16.0 * r1[f]));
    CHECK(r1[f] >= 0.0);
  }
}

TEST_CASE("compensation source") {
  const StaggeredGrid g(5, 0.0, 2.5);
  std::vector<double> R(6, 0.0);
  for (double s : compensation_source(g, R)) CHECK(s == 0.0);
  R[2] = 2.0;
  auto S = compensation_source(g, R);
  CHECK(S[1] == doctest::Approx(1.0 / 0.5));
  CHECK(S[2] == doctest::Approx(1.0 / 0.5));
  CHECK(S[0] == 0.0);

  std::mt19937_64 rng(8);
  for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
    const StaggeredGrid h(20, 0.0, 1.0, kind);
    const auto r = random_vector(h.n_faces(), rng, 0.0, 1.0);
    const auto s = compensation_source(h, r);
    double total = 0.0;
    for (std::size_t k = 0; k < 20; ++k) total += h.cell_volume(k) * s[k];
    CHECK(total == doctest::Approx(std::accumulate(r.begin(), r.end(), 0.0)).epsilon(1e-14));
  }
}

TEST_CASE("cell kinetic energy") {
  const StaggeredGrid g(10, 0.0, 1.0, BoundaryKind::periodic);
  FieldState s = FieldState::zeros(g);
  std::fill(s.rho.begin(), s.rho.end(), 1.5);
  std::fill(s.rho_prev.begin(), s.rho_prev.end(), 1.5);
  std::fill(s.p.begin(), s.p.end(), 1e5);
  for (double e : cell_kinetic_energy(g, s, 0.01)) CHECK(e == 0.0);
  std::fill(s.u.begin(), s.u.end(), 4.0);
  for (double e : cell_kinetic_energy(g, s, 0.01)) CHECK(e == doctest::Approx(0.5 * 1.5 * 16.0));

  const std::vector<double> rd{2.0}, u{0.0}, grad{10.0};
  CHECK(face_kinetic_energy(rd, u, grad, 0.1)[0] == doctest::Approx(0.01 * 100.0 / 4.0));
  CHECK(face_kinetic_energy(rd, u, grad, 0.0)[0] == 0.0);
}

TEST_CASE("total energy of a resting inert gas") {
  MixtureSpec spec;
  spec.formation_enthalpy = {0.0, 0.0, 0.0, 0.0};
  const StaggeredGrid g(7, 0.0, 1.4);
  FieldState s = FieldState::zeros(g);
  double expected = 0.0;
  for (std::size_t k = 0; k < 7; ++k) {
    s.rho[k] = s.rho_prev[k] = 1.0 + 0.1 * static_cast<double>(k);
    s.p[k] = 1e5;
    s.e_s[k] = sensible_energy_from_pressure(spec.gamma, s.p[k], s.rho[k]);
    s.set_composition(k, {0.0, 0.2, 0.8, 0.0});
    expected += g.cell_volume(k) * s.rho[k] * s.e_s[k];
  }
  CHECK(total_energy(g, spec, s, 0.01) == doctest::Approx(expected).epsilon(1e-15));
  const auto parts = energy_breakdown(g, spec, s, 0.01);
  CHECK(parts.kinetic == 0.0);
  CHECK(parts.chemical == 0.0);
}

TEST_CASE("correction step") {
  const double gamma = 1.4;
  const CorrectionSolveConfig cfg;

  SUBCASE("uniform state at rest is a fixed point") {
    const StaggeredGrid g(10, 0.0, 1.0);
    const std::vector<double> rho(10, 1.1), p(10, 1e5), zero_f(11, 0.0), zero_c(10, 0.0);
    const auto rd = dual_density(g, rho);
    const auto r = correction_solve(g, gamma, rho, p, rd, zero_f, zero_f, zero_c, 1e-4, cfg);
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(r.p[k] == 1e5);
      CHECK(r.rho[k] == 1.1);
    }
    for (double v : r.u) CHECK(v == 0.0);
  }

  SUBCASE("random data: momentum, mass and pressure equations hold") {
    std::mt19937_64 rng(13);
    for (auto kind : {BoundaryKind::wall, BoundaryKind::periodic}) {
      const StaggeredGrid g(50, 0.0, 1.0, kind);
      const double dt = 1e-4;
      const auto rho = random_vector(50, rng, 0.5, 2.0);
      const auto p = random_vector(50, rng, 0.8e5, 1.2e5);
      auto ut = random_vector(g.n_faces(), rng, -20.0, 20.0);
      zero_walls(g, ut);
      const auto rd = dual_density(g, rho);
      const auto grad = pressure_gradient(g, p);
      const auto source = random_vector(50, rng, 0.0, 1e6);
      const auto r = correction_solve(g, gamma, rho, p, rd, ut, grad, source, dt, cfg);
      CHECK(r.residual <= cfg.nonlinear_tol);

      const auto new_grad = pressure_gradient(g, r.p);
      for (std::size_t f = 0; f < g.n_faces(); ++f) {
        if (g.is_boundary_face(f)) {
          CHECK(r.u[f] == 0.0);
          continue;
        }
        const double momentum = rd[f] * (r.u[f] - ut[f]) / dt + new_grad[f] - grad[f];
        CHECK(std::abs(momentum) / (rd[f] * 20.0 / dt) < 1e-12);
      }
      const auto mass = mass_balance_residual(g, rho, r.rho, r.mass_flux, dt);
      for (std::size_t k = 0; k < 50; ++k) {
        CHECK(std::abs(mass[k]) / (g.cell_volume(k) * rho[k] / dt) < 1e-12);
        CHECK(r.p[k] == doctest::Approx(pressure_from_state(gamma, r.rho[k], r.e_s[k])));
        CHECK(r.h_s[k] == doctest::Approx(gamma * r.e_s[k]));
      }
      const auto res = pressure_equation_residual(g, gamma, p, r.p, r.u, source, dt);
      for (std::size_t k = 0; k < 50; ++k) {
        CHECK(std::abs(res[k]) / (g.cell_volume(k) * r.p[k] / ((gamma - 1.0) * dt)) < 1e-11);
      }
      const double m0 = std::inner_product(rho.begin(), rho.end(), g.cell_volumes().begin(), 0.0);
      const double m1 =
          std::inner_product(r.rho.begin(), r.rho.end(), g.cell_volumes().begin(), 0.0);
      CHECK(std::abs(m1 - m0) / m0 < 1e-13);
    }
  }

  SUBCASE("contact discontinuity keeps pressure and velocity uniform") {
    const StaggeredGrid g(40, 0.0, 1.0, BoundaryKind::periodic);
    std::vector<double> rho(40), p(40, 1e5), u(40, 30.0), zero(40, 0.0);
    for (std::size_t k = 0; k < 40; ++k) rho[k] = k < 20 ? 1.0 : 0.2;
    const auto rd = dual_density(g, rho);
    const auto r = correction_solve(g, gamma, rho, p, rd, u, zero, zero, 1e-4, cfg);
    for (double v : r.p) CHECK(std::abs(v - 1e5) / 1e5 < 1e-11);
    for (double v : r.u) CHECK(std::abs(v - 30.0) / 30.0 < 1e-11);
  }
}

TEST_CASE("sensible energy stays positive with a heat source") {
  std::mt19937_64 rng(10);
  const StaggeredGrid g(30, 0.0, 1.0);
  const double dt = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_vector(30, rng, 0.2, 2.0);
    const auto p = random_vector(30, rng, 1e4, 1e6);
    auto ut = random_vector(31, rng, -100.0, 100.0);
    zero_walls(g, ut);
    const auto rd = dual_density(g, rho);
    const auto source = random_vector(30, rng, 0.0, 1e9);
    const auto r = correction_solve(g, 1.4, rho, p, rd, ut, pressure_gradient(g, p), source, dt,
                                    CorrectionSolveConfig{});
    for (std::size_t k = 0; k < 30; ++k) {
      CHECK(r.e_s[k] > 0.0);
      CHECK(r.rho[k] > 0.0);
    }
  }
}

TEST_CASE("correction configuration") {
  CorrectionSolveConfig c;
  c.max_iterations = 0;
  CHECK_THROWS(c.validate());
}
