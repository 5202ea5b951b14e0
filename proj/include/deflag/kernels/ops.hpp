#pragma once

// Scalar min/max with the operand order of the x86 vector min/max
// instructions, so scalar and vector code agree on ties and signed zeros.

namespace deflag::kernels {

inline double vmin(double a, double b) { return a < b ? a : b; }
inline double vmax(double a, double b) { return a > b ? a : b; }
inline double clamp_between(double v, double lo, double hi) { return vmin(vmax(v, lo), hi); }

}  // namespace deflag::kernels
