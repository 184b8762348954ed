#include "uvaa/beamforming.hpp"

#include <cmath>
#include <stdexcept>

#include "uvaa/mathfn.hpp"

namespace uvaa {

void QuadratureSpec::validate() const {
  if (n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("QuadratureSpec: grid counts must be >= 2");
}

double initial_phase(const UavPose& pose, const SphericalDir& steer, double wavelength) {
  const double st = std::sin(steer.theta);
  const Vec3& p = pose.position;
  const double projection =
      p.x * st * std::cos(steer.phi) + p.y * st * std::sin(steer.phi) + p.z * std::cos(steer.theta);
  return -2.0 * M_PI / wavelength * projection;
}

std::complex<double> array_factor(const ArrayConfig& cfg, const SphericalDir& eval_dir,
                                  const SphericalDir& steer,
                                  std::span<const double> phase_errors) {
  if (!phase_errors.empty() && phase_errors.size() != cfg.poses.size())
    throw std::invalid_argument("array_factor: phase error count mismatch");
  const double k = 2.0 * M_PI / cfg.wavelength;
  const double st = std::sin(eval_dir.theta);
  const double ex = st * std::cos(eval_dir.phi);
  const double ey = st * std::sin(eval_dir.phi);
  const double ez = std::cos(eval_dir.theta);

  std::complex<double> af{0.0, 0.0};
  for (std::size_t i = 0; i < cfg.poses.size(); ++i) {
    const UavPose& pose = cfg.poses[i];
    const Vec3& p = pose.position;
    double phase = initial_phase(pose, steer, cfg.wavelength) + k * (p.x * ex + p.y * ey + p.z * ez);
    if (!phase_errors.empty()) phase += phase_errors[i];
    af += pose.excitation * std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return af;
}

GainEvaluator::GainEvaluator(const ArrayConfig& cfg, const SphericalDir& steer,
                             const QuadratureSpec& quad) {
  quad.validate();
  if (cfg.poses.empty()) throw std::invalid_argument("GainEvaluator: empty array");
  if (!(cfg.wavelength > 0.0)) throw std::invalid_argument("GainEvaluator: wavelength must be > 0");
  n_elems_ = cfg.poses.size();
  n_theta_ = quad.n_theta;
  n_phi_ = quad.n_phi;

  const double k = 2.0 * M_PI / cfg.wavelength;
  std::vector<double> psi(n_elems_);
  steer_response_.resize(n_elems_);
  {
    const double st = std::sin(steer.theta);
    const double ex = st * std::cos(steer.phi);
    const double ey = st * std::sin(steer.phi);
    const double ez = std::cos(steer.theta);
    for (std::size_t i = 0; i < n_elems_; ++i) {
      const UavPose& pose = cfg.poses[i];
      psi[i] = initial_phase(pose, steer, cfg.wavelength);
      const Vec3& p = pose.position;
      const double phase = psi[i] + k * (p.x * ex + p.y * ey + p.z * ez);
      steer_response_[i] = pose.excitation * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
  }

  const double d_theta = M_PI / n_theta_;
  const double d_phi = 2.0 * M_PI / n_phi_;
  weights_.resize(n_theta_);
  grid_response_.resize(static_cast<std::size_t>(n_theta_) * n_phi_ * n_elems_);

  std::vector<double> cos_phi(n_phi_), sin_phi(n_phi_);
  for (int j = 0; j < n_phi_; ++j) {
    const double phi = -M_PI + (j + 0.5) * d_phi;
    cos_phi[j] = std::cos(phi);
    sin_phi[j] = std::sin(phi);
  }

  std::size_t idx = 0;
  for (int t = 0; t < n_theta_; ++t) {
    const double theta = (t + 0.5) * d_theta;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    weights_[t] = st * d_theta * d_phi;
    for (int j = 0; j < n_phi_; ++j) {
      const double ex = st * cos_phi[j];
      const double ey = st * sin_phi[j];
      for (std::size_t i = 0; i < n_elems_; ++i) {
        const Vec3& p = cfg.poses[i].position;
        const double phase = psi[i] + k * (p.x * ex + p.y * ey + p.z * ct);
        grid_response_[idx++] =
            cfg.poses[i].excitation * std::complex<double>{std::cos(phase), std::sin(phase)};
      }
    }
  }
}

double GainEvaluator::gain(double efficiency, std::span<const double> phase_errors) const {
  if (!phase_errors.empty() && phase_errors.size() != n_elems_)
    throw std::invalid_argument("GainEvaluator::gain: phase error count mismatch");
  if (!(efficiency >= 0.0 && efficiency <= 1.0))
    throw std::invalid_argument("GainEvaluator::gain: efficiency must be in [0, 1]");

  std::vector<std::complex<double>> rot(n_elems_, std::complex<double>{1.0, 0.0});
  if (!phase_errors.empty()) {
    for (std::size_t i = 0; i < n_elems_; ++i)
      rot[i] = {std::cos(phase_errors[i]), std::sin(phase_errors[i])};
  }

  std::complex<double> af_steer{0.0, 0.0};
  for (std::size_t i = 0; i < n_elems_; ++i) af_steer += steer_response_[i] * rot[i];

  double integral = 0.0;
  std::size_t idx = 0;
  for (int t = 0; t < n_theta_; ++t) {
    double row = 0.0;
    for (int j = 0; j < n_phi_; ++j) {
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < n_elems_; ++i) {
        const std::complex<double> v = grid_response_[idx++] * rot[i];
        re += v.real();
        im += v.imag();
      }
      row += re * re + im * im;
    }
    integral += row * weights_[t];
  }
  if (!(integral > 0.0)) throw std::domain_error("array_gain: degenerate array");
  return 4.0 * M_PI * std::norm(af_steer) / integral * efficiency;
}

double array_gain(const ArrayConfig& cfg, const SphericalDir& steer, double efficiency,
                  const QuadratureSpec& quad) {
  return GainEvaluator(cfg, steer, quad).gain(efficiency);
}

double tikhonov_pdf(double eps, double gamma) {
  if (eps <= -M_PI || eps >= M_PI) return 0.0;
  return std::exp(gamma * std::cos(eps)) / (2.0 * M_PI * bessel_i0(gamma));
}

double sample_phase_error(double gamma, Rng& rng) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("sample_phase_error: requires gamma >= 0");
  // Accept eps ~ U(-pi, pi) with probability exp(gamma (cos eps - 1)).
  for (;;) {
    const double eps = rng.uniform(-M_PI, M_PI);
    const double u = rng.uniform();
    if (std::log(std::max(u, 1e-300)) < gamma * (std::cos(eps) - 1.0)) return eps;
  }
}

}  // namespace uvaa
