#include <cmath>

#include "deflag/kernels/kernels.hpp"
#include "deflag/kernels/ops.hpp"

namespace deflag::kernels {
namespace {

void eos_pressure(double gm1, const double* rho, const double* e, double* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] = gm1 * rho[i] * e[i];
}

void eos_energy(double gm1, const double* p, const double* rho, double* e, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) e[i] = p[i] / (gm1 * rho[i]);
}

void upwind_flux(const double* ql, const double* qr, const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (u[i] >= 0.0 ? ql[i] : qr[i]) * u[i];
}

void face_gradient(const double* pl, const double* pr, const double* dv, double* out,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (pr[i] - pl[i]) / dv[i];
}

void flux_divergence(const double* fl, const double* fr, const double* yl, const double* yr,
                     const double* vol, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (fr[i] * yr[i] - fl[i] * yl[i]) / vol[i];
}

void kinetic_residual(const double* rho, const double* un, const double* uo, const double* dv,
                      double inv_two_dt, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = un[i] - uo[i];
    out[i] = dv[i] * rho[i] * (d * d) * inv_two_dt;
  }
}

void muscl_faces(const FaceStencil& s, double hzm, double hzp, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const bool up = s.flux[i] >= 0.0;
    const double ym = up ? s.cell_m[i] : s.cell_p[i];
    const double yp = up ? s.cell_p[i] : s.cell_m[i];
    const double yo = up ? s.cell_mm[i] : s.cell_pp[i];
    const double tentative = 0.5 * ym + 0.5 * yp;
    const double a1 = ym + hzp * (yp - ym);
    const double a2 = ym + hzm * (ym - yo);
    const double lo = vmax(vmin(ym, a1), vmin(ym, a2));
    const double hi = vmin(vmax(ym, a1), vmax(ym, a2));
    out[i] = clamp_between(tentative, lo, hi);
  }
}

void antidiffusive_faces(const FaceStencil& s, double dt, double s_max, double* out,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const bool up = s.flux[i] >= 0.0;
    const double yk = up ? s.cell_m[i] : s.cell_p[i];
    const double yl = up ? s.cell_p[i] : s.cell_m[i];
    const double yo = up ? s.cell_mm[i] : s.cell_pp[i];
    const double fop = up ? s.flux_prev[i] : s.flux_next[i];
    const double mass = up ? s.rho_m[i] * s.vol_m[i] : s.rho_p[i] * s.vol_p[i];
    const double nu = (dt * std::fabs(s.flux[i])) / mass;
    const double nu_op = (dt * std::fabs(fop)) / mass;
    const double zeta = vmax(vmin((1.0 - nu_op) / nu, s_max), 0.0);
    const double bound = yk + zeta * (yk - yo);
    const double v = clamp_between(yl, vmin(bound, yk), vmax(bound, yk));
    out[i] = nu > 0.0 ? v : yk;
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{Isa::scalar,      eos_pressure,     eos_energy,
                           upwind_flux,      face_gradient,    flux_divergence,
                           kinetic_residual, muscl_faces,      antidiffusive_faces};
  return table;
}

}  // namespace deflag::kernels
