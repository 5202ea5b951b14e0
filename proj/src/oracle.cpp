#include "deflag/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "deflag/errors.hpp"

namespace deflag {

GasState gas_state_from_pt(const MixtureSpec& spec, double p, double T, const Composition& molar,
                           double u) {
  if (!(p > 0.0) || !(T > 0.0)) throw ConfigError("right state needs p > 0 and T > 0");
  GasState s;
  s.y = mass_fractions_from_molar(spec, molar);
  s.rho = p / (mixture_gas_constant(spec, s.y) * T);
  s.p = p;
  s.u = u;
  return s;
}

Composition asymptotic_composition(const MixtureSpec& spec, const Composition& y, double G) {
  if (G > 0.5) return y;
  const double z = z_from_fractions(spec, y[fuel], y[oxidant]);
  Composition out{};
  out[fuel] = spec.stoich_mass(fuel) * std::max(0.0, z);
  out[oxidant] = spec.stoich_mass(oxidant) * std::max(0.0, -z);
  out[neutral] = y[neutral];
  out[product] = 1.0 - out[fuel] - out[oxidant] - out[neutral];
  return out;
}

double JumpResiduals::max() const { return std::max({mass, momentum, energy}); }

namespace {

double total_enthalpy(const MixtureSpec& spec, const GasState& s) {
  return spec.gamma / (spec.gamma - 1.0) * s.p / s.rho + chemical_energy(spec, s.y);
}

}  // namespace

JumpResiduals jump_residuals(const MixtureSpec& spec, const GasState& left, const GasState& right,
                             double speed) {
  const double wl = left.u - speed;
  const double wr = right.u - speed;
  const double ml = left.rho * wl;
  const double mr = right.rho * wr;
  const double mass_scale = std::max({std::abs(ml), std::abs(mr), left.rho * std::abs(speed),
                                      right.rho * std::abs(speed), 1e-300});
  const double mom_l = ml * wl + left.p;
  const double mom_r = mr * wr + right.p;
  const double el = total_enthalpy(spec, left) + 0.5 * wl * wl;
  const double er = total_enthalpy(spec, right) + 0.5 * wr * wr;
  const double energy_scale =
      std::max({spec.gamma / (spec.gamma - 1.0) * left.p / left.rho,
                spec.gamma / (spec.gamma - 1.0) * right.p / right.rho,
                std::abs(chemical_energy(spec, left.y)), std::abs(chemical_energy(spec, right.y)),
                0.5 * wl * wl, 0.5 * wr * wr});
  JumpResiduals r;
  r.mass = std::abs(ml - mr) / mass_scale;
  r.momentum = std::abs(mom_l - mom_r) / std::max({std::abs(mom_l), std::abs(mom_r), 1e-300});
  // Energy is carried by the mass flux; compare the specific quantities,
  // weighted so a vanishing mass flux gives no residual.
  r.energy = std::abs(ml) > 0.0 || std::abs(mr) > 0.0
                 ? std::abs(ml * el - mr * er) / (mass_scale * energy_scale)
                 : 0.0;
  return r;
}

double WavePattern::max_residual() const {
  return std::max(precursor_residual.max(), reactive_residual.max());
}

namespace {

struct Branch {
  GasState intermediate;
  GasState burnt;
  double precursor_speed = 0.0;
  double reactive_speed = 0.0;
  double mismatch = 0.0;  // reactive energy balance, J/kg
  bool admissible = false;
};

// Every unknown of the pattern expressed through the pressure p2 behind
// the precursor shock.
Branch evaluate(const MixtureSpec& spec, const GasState& right, const Composition& burnt_y,
                double u_left, double flame_speed, double p2) {
  const double g = spec.gamma;
  const double pr = right.p;
  const double rr = right.rho;
  Branch b;
  GasState& mid = b.intermediate;
  mid.y = right.y;
  mid.p = p2;
  const double a_coef = 2.0 / ((g + 1.0) * rr);
  const double b_coef = (g - 1.0) / (g + 1.0) * pr;
  mid.u = right.u + (p2 - pr) * std::sqrt(a_coef / (p2 + b_coef));
  const double mu = (g - 1.0) / (g + 1.0);
  const double ratio = p2 / pr;
  mid.rho = rr * (ratio + mu) / (mu * ratio + 1.0);
  if (p2 == pr) {
    b.precursor_speed = right.u + std::sqrt(g * pr / rr);
  } else {
    b.precursor_speed = (mid.rho * mid.u - rr * right.u) / (mid.rho - rr);
  }

  // Flame: the unburnt gas enters at flame_speed relative to the front.
  b.reactive_speed = mid.u + flame_speed;
  const double w_mid = flame_speed;
  const double w_burnt = b.reactive_speed - u_left;
  GasState& burnt = b.burnt;
  burnt.u = u_left;
  burnt.y = burnt_y;
  if (!(w_burnt > 0.0)) return b;
  const double m = mid.rho * w_mid;
  burnt.rho = m / w_burnt;
  burnt.p = mid.p + m * (w_mid - w_burnt);
  if (!(burnt.p > 0.0) || !(burnt.rho > 0.0)) return b;
  b.mismatch = total_enthalpy(spec, burnt) + 0.5 * w_burnt * w_burnt -
               total_enthalpy(spec, mid) - 0.5 * w_mid * w_mid;
  b.admissible = true;
  return b;
}

}  // namespace

WavePattern solve_deflagration_riemann(const MixtureSpec& spec, const GasState& right,
                                       double u_left, double flame_speed) {
  spec.validate();
  if (!(right.rho > 0.0) || !(right.p > 0.0)) {
    throw OracleError("right state must have positive density and pressure");
  }
  double sum = 0.0;
  for (double v : right.y) sum += v;
  if (std::abs(sum - 1.0) > 1e-12) throw OracleError("right-state fractions must sum to 1");
  if (!(flame_speed >= 0.0)) throw OracleError("flame speed must be non-negative");

  WavePattern w;
  w.spec = spec;
  w.right = right;
  w.flame_speed = flame_speed;
  const Composition burnt_y = asymptotic_composition(spec, right.y, 0.0);
  w.heat_release = chemical_energy(spec, right.y) - chemical_energy(spec, burnt_y);

  if (flame_speed == 0.0) {
    w.trivial = true;
    w.intermediate = right;
    w.burnt = right;
    w.rho_unburnt = right.rho;
    return w;
  }

  auto f = [&](double log_p) {
    return evaluate(spec, right, burnt_y, u_left, flame_speed, std::exp(log_p));
  };

  // Bracket in log-pressure: the mismatch starts negative for an exothermic
  // front at rest and grows with the shock strength.
  double lo = std::log(right.p);
  Branch b_lo = f(lo);
  if (!b_lo.admissible) throw OracleError("no admissible deflagration branch at zero shock strength");
  if (b_lo.mismatch > 0.0) {
    throw OracleError("flame front is not compressive for this data (mismatch > 0 at p = p_R)");
  }
  double hi = lo;
  Branch b_hi = b_lo;
  if (b_lo.mismatch != 0.0) {
    double step = 0.05;
    for (int i = 0; i < 200; ++i) {
      hi = lo + step;
      b_hi = f(hi);
      if (!b_hi.admissible) {
        std::ostringstream msg;
        msg << "no admissible deflagration branch: burnt state lost positivity at p2 = "
            << std::exp(hi) << " before the energy mismatch changed sign";
        throw OracleError(msg.str());
      }
      if (b_hi.mismatch >= 0.0) break;
      lo = hi;
      b_lo = b_hi;
      step *= 1.5;
    }
    if (b_hi.mismatch < 0.0) throw OracleError("failed to bracket the precursor shock pressure");
  }

  // Safeguarded secant/bisection on the bracket.
  Branch best = b_hi.mismatch == 0.0 ? b_hi : b_lo;
  double x = hi;
  int it = 0;
  if (b_lo.mismatch != 0.0 && b_hi.mismatch != 0.0) {
    double flo = b_lo.mismatch;
    double fhi = b_hi.mismatch;
    for (; it < 200; ++it) {
      x = hi - fhi * (hi - lo) / (fhi - flo);
      if (!(x > lo && x < hi) || it % 3 == 2) x = 0.5 * (lo + hi);
      const Branch bx = f(x);
      if (!bx.admissible) throw OracleError("iterate left the admissible branch");
      best = bx;
      if (bx.mismatch == 0.0 || (hi - lo) < 1e-15 * std::abs(hi)) break;
      if (bx.mismatch < 0.0) {
        lo = x;
        flo = bx.mismatch;
      } else {
        hi = x;
        fhi = bx.mismatch;
      }
      const double scale = total_enthalpy(spec, bx.intermediate);
      if (std::abs(bx.mismatch) < 1e-15 * scale) break;
    }
  }
  w.iterations = it;
  w.intermediate = best.intermediate;
  w.burnt = best.burnt;
  w.precursor_speed = best.precursor_speed;
  w.reactive_speed = best.reactive_speed;
  w.rho_unburnt = best.intermediate.rho;
  w.precursor_residual = jump_residuals(spec, w.intermediate, w.right, w.precursor_speed);
  w.reactive_residual = jump_residuals(spec, w.burnt, w.intermediate, w.reactive_speed);
  if (!(w.max_residual() < 1e-10)) {
    std::ostringstream msg;
    msg << "jump residual " << w.max_residual() << " above 1e-10 after " << it
        << " iterations; bracket [" << std::exp(lo) << ", " << std::exp(hi) << "] Pa";
    throw OracleError(msg.str());
  }
  return w;
}

PointState point_state(const MixtureSpec& spec, const GasState& gas, double G) {
  PointState s;
  s.gas = gas;
  s.G = G;
  s.e_s = gas.p / ((spec.gamma - 1.0) * gas.rho);
  s.h_s = spec.gamma * s.e_s;
  s.T = temperature(spec, s.e_s, mixture_gas_constant(spec, gas.y));
  s.z = z_from_fractions(spec, gas.y[fuel], gas.y[oxidant]);
  return s;
}

PointState sample_solution(const WavePattern& pattern, double x, double t, double x0) {
  const double xi = (x - x0) / t;
  if (pattern.trivial || xi >= pattern.precursor_speed) {
    return point_state(pattern.spec, pattern.right, 1.0);
  }
  if (xi >= pattern.reactive_speed) return point_state(pattern.spec, pattern.intermediate, 1.0);
  return point_state(pattern.spec, pattern.burnt, 0.0);
}

PointState average_solution(const WavePattern& pattern, double a, double b, double t, double x0) {
  std::array<double, 4> cuts{a, 0.0, 0.0, b};
  cuts[1] = std::clamp(x0 + pattern.reactive_speed * t, a, b);
  cuts[2] = std::clamp(x0 + pattern.precursor_speed * t, a, b);
  if (pattern.trivial) cuts[1] = cuts[2] = a;
  const PointState parts[3] = {point_state(pattern.spec, pattern.burnt, 0.0),
                               point_state(pattern.spec, pattern.intermediate, 1.0),
                               point_state(pattern.spec, pattern.right, 1.0)};
  PointState avg;
  avg.G = 0.0;
  const double width = b - a;
  for (int i = 0; i < 3; ++i) {
    const double w = (cuts[i + 1] - cuts[i]) / width;
    if (w <= 0.0) continue;
    const PointState& s = parts[i];
    avg.gas.rho += w * s.gas.rho;
    avg.gas.p += w * s.gas.p;
    avg.gas.u += w * s.gas.u;
    for (std::size_t j = 0; j < n_species; ++j) avg.gas.y[j] += w * s.gas.y[j];
    avg.G += w * s.G;
    avg.e_s += w * s.e_s;
    avg.h_s += w * s.h_s;
    avg.T += w * s.T;
    avg.z += w * s.z;
  }
  return avg;
}

}  // namespace deflag
