#include "uvaa/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace uvaa {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

double noise_from_psd_dbm_hz(double psd_dbm_hz, double bandwidth_hz) {
  return std::pow(10.0, (psd_dbm_hz - 30.0) / 10.0) * bandwidth_hz;
}

void ChannelParams::validate() const {
  const double fields[] = {c_env, d_env, mu_los, mu_nlos, alpha, f_c, bandwidth, noise_power};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f))
      throw std::invalid_argument("ChannelParams: constants must be positive and finite");
  }
  if (mu_nlos < mu_los)
    throw std::invalid_argument("ChannelParams: requires mu_nlos >= mu_los");
  if (alpha < 2.0) throw std::invalid_argument("ChannelParams: requires alpha >= 2");
}

double los_probability(double elevation_deg, const ChannelParams& p) {
  return 1.0 / (1.0 + p.c_env * std::exp(-p.d_env * (elevation_deg - p.c_env)));
}

double channel_power_gain(const LinkBudget& b, const ChannelParams& p) {
  const double k0 = std::pow(4.0 * M_PI * p.f_c / kSpeedOfLight, 2.0);
  const double p_los = los_probability(b.elevation_deg, p);
  const double attenuation = p_los * p.mu_los + (1.0 - p_los) * p.mu_nlos;
  return 1.0 / (k0 * std::pow(b.distance, p.alpha) * attenuation);
}

double transmission_rate(const LinkBudget& b, const ChannelParams& p) {
  const double g_c = channel_power_gain(b, p);
  const double snr = g_c * p.p_total * b.gain / p.noise_power;
  return p.bandwidth * std::log2(1.0 + snr);
}

}  // namespace uvaa
