#include <immintrin.h>

#include <cmath>

#include "deflag/kernels/kernels.hpp"
#include "deflag/kernels/ops.hpp"

namespace deflag::kernels {
namespace {

constexpr std::size_t lanes = 4;

inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }
inline void store(double* p, __m256d v) { _mm256_storeu_pd(p, v); }
inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }
// Lanes where mask is set take a, the others b.
inline __m256d pick(__m256d mask, __m256d a, __m256d b) { return _mm256_blendv_pd(b, a, mask); }
inline __m256d clamp_pd(__m256d v, __m256d lo, __m256d hi) {
  return _mm256_min_pd(_mm256_max_pd(v, lo), hi);
}

void eos_pressure(double gm1, const double* rho, const double* e, double* p, std::size_t n) {
  const __m256d g = _mm256_set1_pd(gm1);
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    store(p + i, _mm256_mul_pd(_mm256_mul_pd(g, load(rho + i)), load(e + i)));
  }
  for (; i < n; ++i) p[i] = gm1 * rho[i] * e[i];
}

void eos_energy(double gm1, const double* p, const double* rho, double* e, std::size_t n) {
  const __m256d g = _mm256_set1_pd(gm1);
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    store(e + i, _mm256_div_pd(load(p + i), _mm256_mul_pd(g, load(rho + i))));
  }
  for (; i < n; ++i) e[i] = p[i] / (gm1 * rho[i]);
}

void upwind_flux(const double* ql, const double* qr, const double* u, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    const __m256d uv = load(u + i);
    const __m256d fwd = _mm256_cmp_pd(uv, zero, _CMP_GE_OQ);
    store(out + i, _mm256_mul_pd(pick(fwd, load(ql + i), load(qr + i)), uv));
  }
  for (; i < n; ++i) out[i] = (u[i] >= 0.0 ? ql[i] : qr[i]) * u[i];
}

void face_gradient(const double* pl, const double* pr, const double* dv, double* out,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    store(out + i, _mm256_div_pd(_mm256_sub_pd(load(pr + i), load(pl + i)), load(dv + i)));
  }
  for (; i < n; ++i) out[i] = (pr[i] - pl[i]) / dv[i];
}

void flux_divergence(const double* fl, const double* fr, const double* yl, const double* yr,
                     const double* vol, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    const __m256d right = _mm256_mul_pd(load(fr + i), load(yr + i));
    const __m256d left = _mm256_mul_pd(load(fl + i), load(yl + i));
    store(out + i, _mm256_div_pd(_mm256_sub_pd(right, left), load(vol + i)));
  }
  for (; i < n; ++i) out[i] = (fr[i] * yr[i] - fl[i] * yl[i]) / vol[i];
}

void kinetic_residual(const double* rho, const double* un, const double* uo, const double* dv,
                      double inv_two_dt, double* out, std::size_t n) {
  const __m256d inv = _mm256_set1_pd(inv_two_dt);
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    const __m256d d = _mm256_sub_pd(load(un + i), load(uo + i));
    const __m256d m = _mm256_mul_pd(load(dv + i), load(rho + i));
    store(out + i, _mm256_mul_pd(_mm256_mul_pd(m, _mm256_mul_pd(d, d)), inv));
  }
  for (; i < n; ++i) {
    const double d = un[i] - uo[i];
    out[i] = dv[i] * rho[i] * (d * d) * inv_two_dt;
  }
}

void muscl_faces(const FaceStencil& s, double hzm, double hzp, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d vzm = _mm256_set1_pd(hzm);
  const __m256d vzp = _mm256_set1_pd(hzp);
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    const __m256d up = _mm256_cmp_pd(load(s.flux + i), zero, _CMP_GE_OQ);
    const __m256d m = load(s.cell_m + i);
    const __m256d p = load(s.cell_p + i);
    const __m256d ym = pick(up, m, p);
    const __m256d yp = pick(up, p, m);
    const __m256d yo = pick(up, load(s.cell_mm + i), load(s.cell_pp + i));
    const __m256d tentative = _mm256_add_pd(_mm256_mul_pd(half, ym), _mm256_mul_pd(half, yp));
    const __m256d a1 = _mm256_add_pd(ym, _mm256_mul_pd(vzp, _mm256_sub_pd(yp, ym)));
    const __m256d a2 = _mm256_add_pd(ym, _mm256_mul_pd(vzm, _mm256_sub_pd(ym, yo)));
    const __m256d lo = _mm256_max_pd(_mm256_min_pd(ym, a1), _mm256_min_pd(ym, a2));
    const __m256d hi = _mm256_min_pd(_mm256_max_pd(ym, a1), _mm256_max_pd(ym, a2));
    store(out + i, clamp_pd(tentative, lo, hi));
  }
  if (i < n) {
    FaceStencil tail{s.cell_mm + i, s.cell_m + i,    s.cell_p + i,    s.cell_pp + i,
                     s.flux + i,    s.flux_prev + i, s.flux_next + i, nullptr,
                     nullptr,       nullptr,         nullptr};
    scalar_table().muscl_faces(tail, hzm, hzp, out + i, n - i);
  }
}

void antidiffusive_faces(const FaceStencil& s, double dt, double s_max, double* out,
                         std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d vsmax = _mm256_set1_pd(s_max);
  std::size_t i = 0;
  for (; i + lanes <= n; i += lanes) {
    const __m256d f = load(s.flux + i);
    const __m256d up = _mm256_cmp_pd(f, zero, _CMP_GE_OQ);
    const __m256d m = load(s.cell_m + i);
    const __m256d p = load(s.cell_p + i);
    const __m256d yk = pick(up, m, p);
    const __m256d yl = pick(up, p, m);
    const __m256d yo = pick(up, load(s.cell_mm + i), load(s.cell_pp + i));
    const __m256d fop = pick(up, load(s.flux_prev + i), load(s.flux_next + i));
    const __m256d mass = pick(up, _mm256_mul_pd(load(s.rho_m + i), load(s.vol_m + i)),
                              _mm256_mul_pd(load(s.rho_p + i), load(s.vol_p + i)));
    const __m256d nu = _mm256_div_pd(_mm256_mul_pd(vdt, abs_pd(f)), mass);
    const __m256d nu_op = _mm256_div_pd(_mm256_mul_pd(vdt, abs_pd(fop)), mass);
    const __m256d ratio = _mm256_div_pd(_mm256_sub_pd(one, nu_op), nu);
    const __m256d zeta = _mm256_max_pd(_mm256_min_pd(ratio, vsmax), zero);
    const __m256d bound = _mm256_add_pd(yk, _mm256_mul_pd(zeta, _mm256_sub_pd(yk, yo)));
    const __m256d v = clamp_pd(yl, _mm256_min_pd(bound, yk), _mm256_max_pd(bound, yk));
    const __m256d moving = _mm256_cmp_pd(nu, zero, _CMP_GT_OQ);
    store(out + i, pick(moving, v, yk));
  }
  if (i < n) {
    FaceStencil tail{s.cell_mm + i,   s.cell_m + i,    s.cell_p + i,    s.cell_pp + i,
                     s.flux + i,      s.flux_prev + i, s.flux_next + i, s.rho_m + i,
                     s.rho_p + i,     s.vol_m + i,     s.vol_p + i};
    scalar_table().antidiffusive_faces(tail, dt, s_max, out + i, n - i);
  }
}

}  // namespace

const Table* avx2_table() {
  static const Table table{Isa::avx2,        eos_pressure,     eos_energy,
                           upwind_flux,      face_gradient,    flux_divergence,
                           kinetic_residual, muscl_faces,      antidiffusive_faces};
  return &table;
}

}  // namespace deflag::kernels
