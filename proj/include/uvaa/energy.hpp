#pragma once

#include "uvaa/geometry.hpp"

namespace uvaa {

/// Rotary-wing propulsion constants. Defaults reproduce the reference
/// parameter set used throughout the simulation.
struct EnergyParams {
  double p_blade = 79.76;    // blade profile power at hover, W
  double p_induced = 88.66;  // induced power at hover, W
  double v_tip = 120.0;      // rotor blade tip speed, m/s
  double v0 = 4.03;          // mean rotor induced velocity at hover, m/s
  double d0 = 0.6;           // fuselage drag ratio
  double rho = 1.225;        // air density, kg/m^3
  double s = 0.05;           // rotor solidity
  double disc_area = 0.503;  // rotor disc area, m^2
  double mass = 2.0;         // kg
  double g = 9.8;            // m/s^2
  double v_climb = 4.0;      // configured vertical speed, m/s
  double v_descend = 4.0;    // configured vertical speed, m/s

  void validate() const;
};

enum class FlightMode { horizontal, climb, descend };

/// Level-flight propulsion power: blade profile + induced + parasite terms.
double propulsion_power(double v, const EnergyParams& p);

/// Hover power plus the rate of potential-energy gain while climbing.
double climb_power(double v, const EnergyParams& p);

/// Hover power minus the potential-energy recovery rate, floored at zero.
double descend_power(double v, const EnergyParams& p);

/// Maximum-endurance speed. Horizontal mode minimizes propulsion_power over
/// (0, 30] m/s by golden-section search to 0.01 m/s; vertical modes return
/// the configured speeds.
double endurance_speed(const EnergyParams& p, FlightMode mode);

struct MoveCost {
  double horizontal_m = 0.0;
  double climb_m = 0.0;
  double descend_m = 0.0;
  double energy_j = 0.0;
  double time_s = 0.0;
};

/// Energy of a hover-to-hover relocation: horizontal leg at the
/// maximum-endurance speed followed by one vertical leg.
MoveCost move_energy(const Vec3& from, const Vec3& to, const EnergyParams& p);

}  // namespace uvaa
