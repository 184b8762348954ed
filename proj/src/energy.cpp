#include "uvaa/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace uvaa {

void EnergyParams::validate() const {
  const double fields[] = {p_blade, p_induced, v_tip,     v0,   d0,       rho,
                           s,       disc_area, mass,      g,    v_climb,  v_descend};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f))
      throw std::invalid_argument("EnergyParams: all fields must be positive and finite");
  }
}

double propulsion_power(double v, const EnergyParams& p) {
  const double blade = p.p_blade * (1.0 + 3.0 * v * v / (p.v_tip * p.v_tip));
  const double r = v * v / (2.0 * p.v0 * p.v0);
  const double induced = p.p_induced * std::sqrt(std::sqrt(1.0 + r * r) - r);
  const double parasite = 0.5 * p.d0 * p.rho * p.s * p.disc_area * v * v * v;
  return blade + induced + parasite;
}

double climb_power(double v, const EnergyParams& p) {
  return propulsion_power(0.0, p) + p.mass * p.g * v;
}

double descend_power(double v, const EnergyParams& p) {
  return std::max(propulsion_power(0.0, p) - p.mass * p.g * v, 0.0);
}

double endurance_speed(const EnergyParams& p, FlightMode mode) {
  if (mode == FlightMode::climb) return p.v_climb;
  if (mode == FlightMode::descend) return p.v_descend;

  // Golden-section search; the power curve is unimodal on this bracket.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = 1e-3, b = 30.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = propulsion_power(c, p);
  double fd = propulsion_power(d, p);
  while (b - a > 0.01) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = propulsion_power(c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = propulsion_power(d, p);
    }
  }
  return 0.5 * (a + b);
}

MoveCost move_energy(const Vec3& from, const Vec3& to, const EnergyParams& p) {
  MoveCost cost;
  cost.horizontal_m = horizontal_distance(from, to);
  const double dz = to.z - from.z;
  cost.climb_m = std::max(dz, 0.0);
  cost.descend_m = std::max(-dz, 0.0);

  const double v_h = endurance_speed(p, FlightMode::horizontal);
  if (cost.horizontal_m > 0.0) {
    const double t = cost.horizontal_m / v_h;
    cost.energy_j += propulsion_power(v_h, p) * t;
    cost.time_s += t;
  }
  if (cost.climb_m > 0.0) {
    const double t = cost.climb_m / p.v_climb;
    cost.energy_j += climb_power(p.v_climb, p) * t;
    cost.time_s += t;
  }
  if (cost.descend_m > 0.0) {
    const double t = cost.descend_m / p.v_descend;
    cost.energy_j += descend_power(p.v_descend, p) * t;
    cost.time_s += t;
  }
  return cost;
}

}  // namespace uvaa
