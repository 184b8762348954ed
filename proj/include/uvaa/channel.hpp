#pragma once

namespace uvaa {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

double db_to_linear(double db);
double linear_to_db(double x);

/// sigma^2 in watts from a power spectral density in dBm/Hz.
double noise_from_psd_dbm_hz(double psd_dbm_hz, double bandwidth_hz);

/// Probabilistic line-of-sight air-to-ground channel constants. Attenuation
/// factors are stored in linear units; convert dB figures with db_to_linear.
struct ChannelParams {
  double c_env = 10.0;  // environment constant C (degree-scaled offset)
  double d_env = 0.6;   // environment constant D
  double mu_los = db_to_linear(3.0);
  double mu_nlos = db_to_linear(23.0);
  double alpha = 2.0;  // path loss exponent
  double f_c = 2.4e9;  // carrier frequency, Hz
  double bandwidth = 1e6;
  double noise_power = noise_from_psd_dbm_hz(-157.0, 1e6);  // W
  double p_total = 0.0;  // total transmit power, W; <= 0 means 0.1 W per UAV

  void validate() const;
  double wavelength() const { return kSpeedOfLight / f_c; }
};

struct LinkBudget {
  double distance = 0.0;       // m, array origin to the station
  double elevation_deg = 0.0;  // receiver elevation angle, degrees
  double gain = 1.0;           // linear array gain
};

/// P_LoS = 1 / (1 + C exp(-D (theta - C))) with theta in degrees.
double los_probability(double elevation_deg, const ChannelParams& p);

/// g_c = K0^-1 d^-alpha [P_LoS mu_LoS + P_NLoS mu_NLoS]^-1, K0 = (4 pi f_c / c)^2.
double channel_power_gain(const LinkBudget& b, const ChannelParams& p);

/// R = B log2(1 + g_c P_t G / sigma^2) in bits/s.
double transmission_rate(const LinkBudget& b, const ChannelParams& p);

}  // namespace uvaa
