#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uvaa/env.hpp"

namespace uvaa {

struct SweepRow {
  double x = 0.0;
  double mean_rate = 0.0;
};

/// Monte-Carlo mean transmission rate of a compensated layout under
/// independent Tikhonov phase errors, one row per concentration. Samples are
/// distributed across hardware threads with per-sample seed substreams, so
/// the result is independent of the thread count.
std::vector<SweepRow> phase_error_sweep(const ArrayConfig& layout, const BeamTask& task,
                                        const EnvConfig& cfg, std::span<const double> gammas,
                                        int n_samples, std::uint64_t seed);

/// Error-free transmission rate of the same layout/task; the reference point
/// for the large-concentration limit.
double error_free_rate(const ArrayConfig& layout, const BeamTask& task, const EnvConfig& cfg);

/// Deterministic rate-versus-distance sweep for an RAA layout at the area
/// center, the station placed on the +x axis.
std::vector<SweepRow> distance_sweep(const EnvConfig& cfg, std::span<const double> distances_m);

void write_sweep_csv(std::span<const SweepRow> rows, const std::string& x_name, std::ostream& os);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

}  // namespace uvaa
