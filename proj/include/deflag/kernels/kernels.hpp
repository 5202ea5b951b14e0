#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace deflag::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Contiguous stencil for a run of faces f = first..first+n-1. Entry j of
/// each cell array is the value at cell (f-2+offset): `cell_mm` is two cells
/// left of the face, `cell_m` the left cell, `cell_p` the right cell and
/// `cell_pp` the cell beyond it.
struct FaceStencil {
  const double* cell_mm;
  const double* cell_m;
  const double* cell_p;
  const double* cell_pp;
  const double* flux;       // F at the face
  const double* flux_prev;  // F at the face to the left
  const double* flux_next;  // F at the face to the right
  const double* rho_m;      // end-of-step density of the left cell
  const double* rho_p;      // end-of-step density of the right cell
  const double* vol_m;
  const double* vol_p;
};

/// Elementwise hot loops. Every implementation must produce bit-identical
/// results to the scalar table for finite inputs.
struct Table {
  Isa isa;
  // p = (gamma - 1) rho e
  void (*eos_pressure)(double gamma_minus_one, const double* rho, const double* e, double* p,
                       std::size_t n);
  // e = p / ((gamma - 1) rho)
  void (*eos_energy)(double gamma_minus_one, const double* p, const double* rho, double* e,
                     std::size_t n);
  // out = (u >= 0 ? q_left : q_right) * u
  void (*upwind_flux)(const double* q_left, const double* q_right, const double* u, double* out,
                      std::size_t n);
  // out = (p_right - p_left) / dual_volume
  void (*face_gradient)(const double* p_left, const double* p_right, const double* dual_volume,
                        double* out, std::size_t n);
  // out = (flux_right * y_right - flux_left * y_left) / volume
  void (*flux_divergence)(const double* flux_left, const double* flux_right, const double* y_left,
                          const double* y_right, const double* volume, double* out,
                          std::size_t n);
  // out = dual_volume * rho * (u_new - u_old)^2 * inv_two_dt
  void (*kinetic_residual)(const double* rho_dual, const double* u_new, const double* u_old,
                           const double* dual_volume, double inv_two_dt, double* out,
                           std::size_t n);
  // MUSCL face values, opposite-cell neighbour policy, uniform spacing.
  void (*muscl_faces)(const FaceStencil& s, double half_zeta_minus, double half_zeta_plus,
                      double* out, std::size_t n);
  // Anti-diffusive face values.
  void (*antidiffusive_faces)(const FaceStencil& s, double dt, double s_max, double* out,
                              std::size_t n);
};

const Table& scalar_table();
/// nullptr when the AVX2 variant was not compiled in.
const Table* avx2_table();
bool cpu_supports_avx2();

/// Table chosen at first use: AVX2 when compiled and supported by the CPU,
/// unless the environment variable DEFLAG_ISA=scalar forces the reference path.
const Table& active();
/// Override the selection; returns false if the requested ISA is unavailable.
bool select(Isa isa);

}  // namespace deflag::kernels
