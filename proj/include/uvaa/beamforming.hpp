#pragma once

#include <complex>
#include <span>
#include <vector>

#include "uvaa/geometry.hpp"
#include "uvaa/rng.hpp"

namespace uvaa {

/// One array element: a hovering UAV with its excitation current weight.
struct UavPose {
  Vec3 position;
  double excitation = 1.0;
};

struct ArrayConfig {
  std::vector<UavPose> poses;
  double wavelength = 0.0;
};

/// Midpoint-rule grid for the sphere integral: n_theta cells over [0, pi],
/// n_phi cells over [-pi, pi].
struct QuadratureSpec {
  int n_theta = 181;
  int n_phi = 360;

  void validate() const;
};

/// Synchronization phase compensating the element position along the steering
/// direction: Psi = -(2 pi / lambda) (x sin(t)cos(p) + y sin(t)sin(p) + z cos(t)).
double initial_phase(const UavPose& pose, const SphericalDir& steer, double wavelength);

/// Complex array factor at eval_dir for an array phase-compensated toward
/// steer. phase_errors, when present, holds one residual phase per element.
std::complex<double> array_factor(const ArrayConfig& cfg, const SphericalDir& eval_dir,
                                  const SphericalDir& steer,
                                  std::span<const double> phase_errors = {});

/// Precomputed per-element responses on the quadrature grid. Construction
/// pays the full grid evaluation once; gain() is then cheap per call, which
/// is what the Monte-Carlo phase-error paths rely on.
class GainEvaluator {
 public:
  GainEvaluator(const ArrayConfig& cfg, const SphericalDir& steer, const QuadratureSpec& quad);

  /// Array gain toward the steered direction. Throws std::domain_error when
  /// the radiated power is zero (all excitations zero).
  double gain(double efficiency, std::span<const double> phase_errors = {}) const;

  std::size_t n_elements() const { return n_elems_; }

 private:
  std::size_t n_elems_;
  std::vector<std::complex<double>> steer_response_;    // per element, at the steer direction
  std::vector<std::complex<double>> grid_response_;     // [grid point][element]
  std::vector<double> weights_;                         // sin(theta) dtheta dphi per grid point row
  int n_theta_, n_phi_;
};

/// G = 4 pi |AF(steer)|^2 / integral(|AF|^2 sin) * efficiency with the
/// element pattern fixed at 0 dB.
double array_gain(const ArrayConfig& cfg, const SphericalDir& steer, double efficiency,
                  const QuadratureSpec& quad);

/// Tikhonov (von Mises) density on (-pi, pi) with concentration gamma.
double tikhonov_pdf(double eps, double gamma);

/// One draw from the Tikhonov density by rejection against a uniform
/// proposal under the exp(gamma) envelope. Exact for any gamma >= 0.
double sample_phase_error(double gamma, Rng& rng);

}  // namespace uvaa
