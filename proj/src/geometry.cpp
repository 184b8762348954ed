#include "uvaa/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace uvaa {

void AreaBounds::validate() const {
  if (!(half_length > 0.0)) throw std::invalid_argument("AreaBounds: half_length must be > 0");
  if (!(h_min > 0.0) || !(h_min < h_max))
    throw std::invalid_argument("AreaBounds: requires 0 < h_min < h_max");
}

bool AreaBounds::contains(const Vec3& p, double tol) const {
  return p.x >= -half_length - tol && p.x <= half_length + tol &&
         p.y >= -half_length - tol && p.y <= half_length + tol &&
         p.z >= h_min - tol && p.z <= h_max + tol;
}

Vec3 AreaBounds::clamp(const Vec3& p) const {
  return {std::clamp(p.x, -half_length, half_length),
          std::clamp(p.y, -half_length, half_length),
          std::clamp(p.z, h_min, h_max)};
}

SphericalDir steering_angles(const Vec3& uav, const Vec3& bs) {
  const double dx = bs.x - uav.x;
  const double dy = bs.y - uav.y;
  const double dz = bs.z - uav.z;
  const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (r == 0.0) throw std::invalid_argument("steering_angles: coincident points");
  const double theta = std::acos(std::clamp(dz / r, -1.0, 1.0));
  const double rh = std::hypot(dx, dy);
  const double phi = rh > 0.0 ? std::atan2(dy, dx) : 0.0;
  return {theta, phi};
}

Vec3 reference_point(const Vec3& bs, const AreaBounds& area) { return area.clamp(bs); }

Vec3 array_origin(std::span<const Vec3> positions) {
  if (positions.empty()) throw std::invalid_argument("array_origin: empty position list");
  Vec3 sum;
  for (const Vec3& p : positions) sum = sum + p;
  return sum * (1.0 / static_cast<double>(positions.size()));
}

double elevation_degrees(const Vec3& air, const Vec3& ground) {
  const double rh = horizontal_distance(air, ground);
  const double dz = air.z - ground.z;
  return std::atan2(dz, rh) * 180.0 / M_PI;
}

}  // namespace uvaa
