#include "uvaa/sweeps.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "uvaa/baselines.hpp"

namespace uvaa {

namespace {

struct LinkGeometry {
  SphericalDir steer;
  double distance;
  double elevation_deg;
};

LinkGeometry link_geometry(const ArrayConfig& layout, const BeamTask& task) {
  std::vector<Vec3> positions(layout.poses.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = layout.poses[i].position;
  const Vec3 origin = array_origin(positions);
  return {steering_angles(origin, task.bs), distance(origin, task.bs),
          elevation_degrees(origin, task.bs)};
}

}  // namespace

double error_free_rate(const ArrayConfig& layout, const BeamTask& task, const EnvConfig& cfg) {
  const LinkGeometry geo = link_geometry(layout, task);
  const double gain = array_gain(layout, geo.steer, cfg.efficiency, cfg.quad);
  return transmission_rate({geo.distance, geo.elevation_deg, gain}, cfg.channel);
}

std::vector<SweepRow> phase_error_sweep(const ArrayConfig& layout, const BeamTask& task,
                                        const EnvConfig& cfg, std::span<const double> gammas,
                                        int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("phase_error_sweep: n_samples must be >= 1");
  for (double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("phase_error_sweep: gammas must be positive");
  }
  const LinkGeometry geo = link_geometry(layout, task);
  const GainEvaluator evaluator(layout, geo.steer, cfg.quad);
  const std::size_t n_elems = layout.poses.size();

  const unsigned n_threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(n_samples)));

  std::vector<SweepRow> rows;
  rows.reserve(gammas.size());
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const double gamma = gammas[gi];
    std::vector<double> rates(n_samples);
    auto worker = [&](unsigned tid) {
      std::vector<double> eps(n_elems);
      for (int s = static_cast<int>(tid); s < n_samples; s += static_cast<int>(n_threads)) {
        Rng rng(mix_seed(seed, (static_cast<std::uint64_t>(gi) << 32) | static_cast<std::uint64_t>(s)));
        for (std::size_t i = 0; i < n_elems; ++i) eps[i] = sample_phase_error(gamma, rng);
        const double gain = evaluator.gain(cfg.efficiency, eps);
        rates[s] = transmission_rate({geo.distance, geo.elevation_deg, gain}, cfg.channel);
      }
    };
    if (n_threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n_threads);
      for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
      for (std::thread& t : pool) t.join();
    }
    double mean = 0.0;
    for (double r : rates) mean += r;  // fixed summation order regardless of threads
    rows.push_back({gamma, mean / n_samples});
  }
  return rows;
}

std::vector<SweepRow> distance_sweep(const EnvConfig& cfg, std::span<const double> distances_m) {
  const Vec3 center{0.0, 0.0, cfg.area.h_min};
  std::vector<SweepRow> rows;
  rows.reserve(distances_m.size());
  for (double d : distances_m) {
    if (!(d > 0.0)) throw std::invalid_argument("distance_sweep: distances must be positive");
    BeamTask task;
    task.bs = {d, 0.0, 0.0};
    task.ref_point = reference_point(task.bs, cfg.area);
    const SphericalDir steer = steering_angles(center, task.bs);
    task.steer = steer;
    const ArrayConfig layout =
        raa_layout(cfg.n_uavs, cfg.channel.wavelength(), center, steer, cfg.area);
    rows.push_back({d, error_free_rate(layout, task, cfg)});
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, const std::string& x_name, std::ostream& os) {
  os << x_name << ",mean_rate_bps\n";
  char buf[64];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.x);
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.mean_rate);
    os << buf << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::vector<SweepRow> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("sweep csv: malformed row");
    rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return rows;
}

}  // namespace uvaa
