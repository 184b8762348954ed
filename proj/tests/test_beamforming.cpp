#include "uvaa/beamforming.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "uvaa/mathfn.hpp"
#include "uvaa/rng.hpp"

using namespace uvaa;

namespace {

constexpr double kLambda = 0.125;

ArrayConfig random_array(Rng& rng, int n, double lambda = kLambda, bool unit_excitation = true) {
  ArrayConfig cfg;
  cfg.wavelength = lambda;
  for (int i = 0; i < n; ++i) {
    cfg.poses.push_back({{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(100, 120)},
                         unit_excitation ? 1.0 : rng.uniform()});
  }
  return cfg;
}

// Independent route for the radiated-power integral: the sphere average of
// the pairwise plane-wave term has the closed form 4 pi sinc(k |xi - xj|).
double radiated_power_closed_form(const ArrayConfig& cfg, const SphericalDir& steer) {
  const double k = 2.0 * M_PI / cfg.wavelength;
  const std::size_t n = cfg.poses.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double psi_i = initial_phase(cfg.poses[i], steer, cfg.wavelength);
      const double psi_j = initial_phase(cfg.poses[j], steer, cfg.wavelength);
      const double d = distance(cfg.poses[i].position, cfg.poses[j].position);
      const double sinc = d == 0.0 ? 1.0 : std::sin(k * d) / (k * d);
      total += cfg.poses[i].excitation * cfg.poses[j].excitation * std::cos(psi_i - psi_j) *
               4.0 * M_PI * sinc;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("initial phase examples") {
  const SphericalDir steer{M_PI / 2, 0.0};
  CHECK(initial_phase({{0, 0, 0}, 1.0}, steer, kLambda) == 0.0);
  CHECK(initial_phase({{kLambda / 2, 0, 0}, 1.0}, steer, kLambda) ==
        doctest::Approx(-M_PI).epsilon(1e-12));
  // At theta = 0 only the altitude term survives.
  const double z = 107.25;
  CHECK(initial_phase({{3.0, -4.0, z}, 1.0}, SphericalDir{0.0, 0.0}, kLambda) ==
        doctest::Approx(-2.0 * M_PI / kLambda * z).epsilon(1e-12));
}

TEST_CASE("compensated array factor at the steered direction is exactly N") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const ArrayConfig cfg = random_array(rng, 16);
    const SphericalDir steer{rng.uniform(0.1, M_PI - 0.1), rng.uniform(-M_PI, M_PI)};
    const std::complex<double> af = array_factor(cfg, steer, steer);
    CHECK(af.real() == doctest::Approx(16.0).epsilon(1e-9));
    CHECK(std::abs(af.imag()) < 1e-9);
  }
}

TEST_CASE("single element has unit magnitude in every direction") {
  Rng rng(22);
  ArrayConfig cfg;
  cfg.wavelength = kLambda;
  cfg.poses.push_back({{17.0, -4.0, 111.0}, 1.0});
  const SphericalDir steer{1.0, 0.3};
  for (int i = 0; i < 50; ++i) {
    const SphericalDir dir{rng.uniform(0, M_PI), rng.uniform(-M_PI, M_PI)};
    CHECK(std::abs(array_factor(cfg, dir, steer)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two-element broadside null from hand expansion") {
  ArrayConfig cfg;
  cfg.wavelength = kLambda;
  cfg.poses.push_back({{kLambda / 4, 0, 0}, 1.0});
  cfg.poses.push_back({{-kLambda / 4, 0, 0}, 1.0});
  const SphericalDir steer{0.0, 0.0};
  const SphericalDir eval{M_PI / 2, 0.0};
  CHECK(std::abs(array_factor(cfg, eval, steer)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("array factor magnitude is bounded by the excitation sum") {
  Rng rng(23);
  const ArrayConfig cfg = random_array(rng, 12, kLambda, false);
  double excitation_sum = 0.0;
  for (const UavPose& p : cfg.poses) excitation_sum += p.excitation;
  const SphericalDir steer{rng.uniform(0.2, M_PI - 0.2), rng.uniform(-M_PI, M_PI)};
  for (int i = 0; i < 200; ++i) {
    const SphericalDir dir{rng.uniform(0, M_PI), rng.uniform(-M_PI, M_PI)};
    CHECK(std::abs(array_factor(cfg, dir, steer)) <= excitation_sum + 1e-9);
  }
  CHECK(std::abs(array_factor(cfg, steer, steer)) == doctest::Approx(excitation_sum).epsilon(1e-12));
}

TEST_CASE("array factor magnitude is invariant under rigid translation") {
  Rng rng(24);
  ArrayConfig cfg = random_array(rng, 8);
  ArrayConfig shifted = cfg;
  const Vec3 t{4.25, -9.5, 3.125};
  for (UavPose& p : shifted.poses) p.position = p.position + t;
  const SphericalDir steer{1.2, -0.4};
  for (int i = 0; i < 50; ++i) {
    const SphericalDir dir{rng.uniform(0, M_PI), rng.uniform(-M_PI, M_PI)};
    CHECK(std::abs(array_factor(cfg, dir, steer)) ==
          doctest::Approx(std::abs(array_factor(shifted, dir, steer))).epsilon(1e-9));
  }
}

TEST_CASE("zero phase errors reproduce the error-free factor bit for bit") {
  Rng rng(25);
  const ArrayConfig cfg = random_array(rng, 6);
  const SphericalDir steer{0.9, 0.7};
  const std::vector<double> zeros(6, 0.0);
  for (int i = 0; i < 20; ++i) {
    const SphericalDir dir{rng.uniform(0, M_PI), rng.uniform(-M_PI, M_PI)};
    const std::complex<double> a = array_factor(cfg, dir, steer);
    const std::complex<double> b = array_factor(cfg, dir, steer, zeros);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
}

TEST_CASE("phase error count mismatch throws") {
  Rng rng(26);
  const ArrayConfig cfg = random_array(rng, 4);
  const std::vector<double> three(3, 0.0);
  CHECK_THROWS_AS(array_factor(cfg, {1, 0}, {1, 0}, three), std::invalid_argument);
}

TEST_CASE("single isotropic element has unit gain") {
  ArrayConfig cfg;
  cfg.wavelength = kLambda;
  cfg.poses.push_back({{0, 0, 110}, 1.0});
  // Brute-force check against a refined grid.
  const double g_default = array_gain(cfg, {1.0, 0.5}, 1.0, {181, 360});
  const double g_fine = array_gain(cfg, {1.0, 0.5}, 1.0, {721, 1440});
  CHECK(g_default == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(g_fine == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("efficiency scales the gain linearly") {
  Rng rng(27);
  const ArrayConfig cfg = random_array(rng, 5);
  const SphericalDir steer{1.3, 0.2};
  const QuadratureSpec quad{121, 240};
  const double g1 = array_gain(cfg, steer, 1.0, quad);
  const double g05 = array_gain(cfg, steer, 0.5, quad);
  CHECK(g05 == doctest::Approx(0.5 * g1).epsilon(1e-12));
}

TEST_CASE("sixteen-element compensated array beats an isotropic radiator") {
  Rng rng(28);
  const ArrayConfig cfg = random_array(rng, 16);
  const SphericalDir steer{1.4, -2.0};
  CHECK(array_gain(cfg, steer, 1.0, {181, 360}) >= 1.0);
}

TEST_CASE("quadrature integral agrees with the closed-form pairwise route") {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    ArrayConfig cfg = random_array(rng, 8, kLambda, false);
    // Compress the geometry so the integrand oscillations stay resolvable.
    for (UavPose& p : cfg.poses) {
      p.position.x *= 0.01;
      p.position.y *= 0.01;
      p.position.z = 110.0 + (p.position.z - 110.0) * 0.01;
    }
    const SphericalDir steer{rng.uniform(0.3, M_PI - 0.3), rng.uniform(-M_PI, M_PI)};
    const double exact = radiated_power_closed_form(cfg, steer);
    const GainEvaluator ev(cfg, steer, {181, 360});
    const double gain = ev.gain(1.0);
    const std::complex<double> af = array_factor(cfg, steer, steer);
    const double from_exact = 4.0 * M_PI * std::norm(af) / exact;
    CHECK(gain == doctest::Approx(from_exact).epsilon(5e-3));
  }
}

TEST_CASE("degenerate array raises") {
  ArrayConfig cfg;
  cfg.wavelength = kLambda;
  cfg.poses.push_back({{0, 0, 110}, 0.0});
  cfg.poses.push_back({{3, 0, 110}, 0.0});
  CHECK_THROWS_AS(array_gain(cfg, {1.0, 0.0}, 1.0, {61, 120}), std::domain_error);
}

TEST_CASE("tikhonov density integrates to one") {
  for (double gamma : {0.0, 0.5, 5.0, 50.0}) {
    // Simpson rule over (-pi, pi).
    const int n = 20000;
    const double h = 2.0 * M_PI / n;
    double sum = tikhonov_pdf(-M_PI + 1e-12, gamma) + tikhonov_pdf(M_PI - 1e-12, gamma);
    for (int i = 1; i < n; ++i) {
      const double x = -M_PI + i * h;
      sum += tikhonov_pdf(x, gamma) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    CHECK(sum * h / 3.0 == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("tikhonov sampling: gamma = 0 is uniform") {
  Rng rng(31);
  const int n = 100000;
  int bins[8] = {0};
  for (int i = 0; i < n; ++i) {
    const double e = sample_phase_error(0.0, rng);
    CHECK(e > -M_PI);
    CHECK(e < M_PI);
    ++bins[static_cast<int>((e + M_PI) / (2.0 * M_PI) * 8)];
  }
  for (int b = 0; b < 8; ++b) {
    CHECK(bins[b] == doctest::Approx(n / 8.0).epsilon(0.05));
  }
}

TEST_CASE("tikhonov sampling: gamma = 50 concentrates") {
  Rng rng(32);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = sample_phase_error(50.0, rng);
    sum += e;
    sq += e * e;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(sd < 0.15);
  CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("expected beam amplitude decays as synchronization degrades") {
  Rng rng(33);
  const ArrayConfig cfg = random_array(rng, 16);
  const SphericalDir steer{1.2, 0.5};
  const double gammas[] = {80.0, 20.0, 5.0, 1.0};
  double prev = 17.0;  // above the error-free value N = 16
  for (double gamma : gammas) {
    double mean = 0.0;
    const int n = 3000;
    std::vector<double> eps(16);
    for (int s = 0; s < n; ++s) {
      for (double& e : eps) e = sample_phase_error(gamma, rng);
      mean += std::abs(array_factor(cfg, steer, steer, eps));
    }
    mean /= n;
    CHECK(mean < prev);
    prev = mean;
  }
}
