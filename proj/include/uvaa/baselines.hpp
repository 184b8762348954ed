#pragma once

#include <optional>

#include "uvaa/beamforming.hpp"
#include "uvaa/geometry.hpp"

namespace uvaa {

enum class BaselineType { laa, raa };

/// Uniformly excited half-wavelength line through center, oriented broadside:
/// perpendicular to the steering azimuth in the horizontal plane. Throws if
/// the layout leaves the flight box.
ArrayConfig laa_layout(int n, double wavelength, const Vec3& center, const SphericalDir& steer,
                       const std::optional<AreaBounds>& bounds = std::nullopt);

/// Uniformly excited axis-aligned sqrt(n) x sqrt(n) half-wavelength grid in
/// the horizontal plane through center. Throws unless n is a perfect square
/// or the layout leaves the flight box.
ArrayConfig raa_layout(int n, double wavelength, const Vec3& center, const SphericalDir& steer,
                       const std::optional<AreaBounds>& bounds = std::nullopt);

}  // namespace uvaa
