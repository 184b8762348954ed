#include "uvaa/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace uvaa {

namespace {

void check_bounds(const ArrayConfig& cfg, const std::optional<AreaBounds>& bounds) {
  if (!bounds) return;
  for (const UavPose& p : cfg.poses) {
    if (!bounds->contains(p.position))
      throw std::invalid_argument("baseline layout exceeds the flight box");
  }
}

}  // namespace

ArrayConfig laa_layout(int n, double wavelength, const Vec3& center, const SphericalDir& steer,
                       const std::optional<AreaBounds>& bounds) {
  if (n < 2) throw std::invalid_argument("laa_layout: requires n >= 2");
  if (!(wavelength > 0.0)) throw std::invalid_argument("laa_layout: wavelength must be > 0");
  // Unit vector perpendicular to the azimuth toward the station.
  const Vec3 dir{-std::sin(steer.phi), std::cos(steer.phi), 0.0};
  const double spacing = wavelength / 2.0;
  ArrayConfig cfg;
  cfg.wavelength = wavelength;
  cfg.poses.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double offset = (i - (n - 1) / 2.0) * spacing;
    cfg.poses.push_back({center + dir * offset, 1.0});
  }
  check_bounds(cfg, bounds);
  return cfg;
}

ArrayConfig raa_layout(int n, double wavelength, const Vec3& center, const SphericalDir& steer,
                       const std::optional<AreaBounds>& bounds) {
  (void)steer;  // grid is axis-aligned; orientation does not affect symmetry
  if (n < 1) throw std::invalid_argument("raa_layout: requires n >= 1");
  if (!(wavelength > 0.0)) throw std::invalid_argument("raa_layout: wavelength must be > 0");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (side * side != n) throw std::invalid_argument("raa_layout: n must be a perfect square");
  const double spacing = wavelength / 2.0;
  ArrayConfig cfg;
  cfg.wavelength = wavelength;
  cfg.poses.reserve(n);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const Vec3 offset{(c - (side - 1) / 2.0) * spacing, (r - (side - 1) / 2.0) * spacing, 0.0};
      cfg.poses.push_back({center + offset, 1.0});
    }
  }
  check_bounds(cfg, bounds);
  return cfg;
}

}  // namespace uvaa
