#pragma once

#include <cmath>
#include <span>

namespace uvaa {

/// Right-handed Cartesian coordinates in meters, ground plane at z = 0.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

inline double horizontal_distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Elevation theta in [0, pi] measured from the +z axis, azimuth phi in
/// [-pi, pi] measured from +x toward +y.
struct SphericalDir {
  double theta = 0.0;
  double phi = 0.0;
};

/// Flight box: x, y in [-half_length, half_length], z in [h_min, h_max].
struct AreaBounds {
  double half_length = 50.0;
  double h_min = 100.0;
  double h_max = 120.0;

  void validate() const;
  bool contains(const Vec3& p, double tol = 1e-9) const;
  Vec3 clamp(const Vec3& p) const;
  double side_length() const { return 2.0 * half_length; }
  /// Diagonal of the admissible box, used as a distance normalizer.
  double box_diagonal() const {
    double l = side_length();
    double h = h_max - h_min;
    return std::sqrt(2.0 * l * l + h * h);
  }
};

/// Elevation and azimuth of the ground target as seen along the line from
/// `uav` to `bs`. Azimuth is resolved over the full circle from the signs of
/// the horizontal offsets; a vanishing horizontal distance yields phi = 0.
SphericalDir steering_angles(const Vec3& uav, const Vec3& bs);

/// Closest point of the flight box to a ground station: componentwise clamp,
/// which lands on the h_min face for any target on the ground plane.
Vec3 reference_point(const Vec3& bs, const AreaBounds& area);

/// Centroid of the element positions, used as the array phase reference.
/// Throws std::invalid_argument on an empty list.
Vec3 array_origin(std::span<const Vec3> positions);

/// Elevation angle in degrees of the airborne point above the horizon as seen
/// from the ground point. Result in [0, 90] for air.z >= ground.z.
double elevation_degrees(const Vec3& air, const Vec3& ground);

}  // namespace uvaa
