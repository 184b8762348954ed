#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "uvaa/beamforming.hpp"
#include "uvaa/channel.hpp"
#include "uvaa/energy.hpp"
#include "uvaa/geometry.hpp"
#include "uvaa/rng.hpp"

namespace uvaa {

/// Every physical and reward constant of the simulation in one validated
/// record. validate() also finalizes the derived defaults: kappa <= 0 becomes
/// n_uavs * side_length, channel.p_total <= 0 becomes 0.1 W per UAV.
struct EnvConfig {
  int n_uavs = 16;
  AreaBounds area;
  double d_min = 0.5;  // collision separation, m
  ChannelParams channel;
  EnergyParams energy;
  // Reward weights for rate, altitude, energy, station distance, spacing.
  double w_rate = 100.0;
  double w_altitude = 4.0;
  double w_energy = 30.0;
  double w_bs_distance = 12.0;
  double w_spacing = 5.0;
  double kappa = 0.0;               // spacing reward scale; <= 0 means N * L
  double collision_penalty = -1.0;  // added once per violating pair
  double bs_distance_min = 2000.0;
  double bs_distance_max = 20000.0;
  double efficiency = 1.0;  // antenna array efficiency
  QuadratureSpec quad;
  std::uint64_t seed = 12345;
  int reset_max_tries = 1000;

  void validate();
};

/// A communication task: the station, its in-area reference point, and the
/// steering direction from the array origin at the time the task was issued.
struct BeamTask {
  Vec3 bs;
  Vec3 ref_point;
  SphericalDir steer;
};

/// Local observation of one agent. flat() is the network input layout:
/// [theta, phi, d_ref, d_origin, excitation, (d_j, I_j) for each j != i in
/// ascending j, ref.x, ref.y, ref.z] - dimension 5 + 2(N-1) + 3.
struct Observation {
  double theta = 0.0;        // elevation to the station
  double phi = 0.0;          // azimuth to the station
  double dist_ref = 0.0;     // distance to the reference point
  double dist_origin = 0.0;  // distance to the array origin
  double excitation = 1.0;
  std::vector<std::pair<double, double>> others;  // (distance, excitation)
  Vec3 ref_point;

  std::vector<double> flat() const;
};

/// Agent-specific critic input: the environment block (all positions, all
/// excitations, reference point: 4N + 3 values) followed by the agent block
/// (theta, phi, d_ref, d_origin, then the N-1 inter-UAV distances) for a
/// total of 5N + 6 values.
struct GlobalState {
  std::vector<double> values;
};

/// Target position and excitation, mapped from a unit-cube policy sample.
struct Action {
  Vec3 target;
  double excitation = 1.0;

  static Action from_unit(const std::array<double, 4>& u, const AreaBounds& area);
  std::array<double, 4> to_unit(const AreaBounds& area) const;
};

struct Transition {
  std::vector<double> observation;
  std::vector<double> global_state;
  std::array<double, 4> action_unit{};
  double reward = 0.0;
};

/// Weighted, normalized reward components; total is their sum plus the
/// collision term.
struct RewardTerms {
  double rate = 0.0;
  double altitude = 0.0;
  double energy = 0.0;
  double bs_distance = 0.0;
  double spacing = 0.0;
  double collision = 0.0;
  double total = 0.0;
};

struct StepInfo {
  double gain = 0.0;
  double rate = 0.0;
  double gain_pt = 0.0;  // shared reward component G * P_t
  double bs_distance = 0.0;
  double elevation_deg = 0.0;
  double total_energy = 0.0;
  std::vector<MoveCost> moves;
  std::vector<int> collisions;  // violating-pair count per agent
  std::vector<RewardTerms> terms;
};

struct ResetResult {
  std::vector<Observation> observations;
  std::vector<GlobalState> states;
  BeamTask task;
};

struct StepResult {
  std::vector<double> rewards;
  StepInfo info;
};

/// The one-slot Markov game. Each episode is reset (or next_task) followed by
/// exactly one step. An instance is single-owner mutable state; run separate
/// instances for concurrent rollouts. (seed, config, action sequence) fully
/// determines every output.
class UavEnv {
 public:
  explicit UavEnv(EnvConfig cfg);

  /// New episode: fresh poses (uniform in the box, pairwise >= d_min by
  /// rejection), unit excitations, and a new station.
  ResetResult reset();

  /// New station and reference point, keeping the current poses; used for
  /// multi-task evaluation sequences.
  ResetResult next_task();

  StepResult step(const std::vector<Action>& actions);

  /// Rewards for an arbitrary layout under this config; also returns the
  /// shared link metrics through info.
  std::pair<std::vector<double>, StepInfo> compute_rewards(
      const std::vector<UavPose>& poses, const BeamTask& task,
      const std::vector<MoveCost>& energies) const;

  Observation observation(int agent) const;
  GlobalState global_state(int agent) const;

  const EnvConfig& config() const { return cfg_; }
  const std::vector<UavPose>& poses() const { return poses_; }
  const BeamTask& task() const { return task_; }
  double endurance_speed_horizontal() const { return v_h_; }
  /// Energy normalizer P(0) * L / v_H.
  double energy_scale() const { return energy_scale_; }
  int observation_dim() const { return 5 + 2 * (cfg_.n_uavs - 1) + 3; }
  int state_dim() const { return 5 * cfg_.n_uavs + 6; }

  std::string save_rng_state() const { return rng_.save_state(); }
  void load_rng_state(const std::string& s) { rng_.load_state(s); }

 private:
  EnvConfig cfg_;
  Rng rng_;
  std::vector<UavPose> poses_;
  BeamTask task_;
  double v_h_ = 0.0;
  double p_hover_ = 0.0;
  double energy_scale_ = 0.0;

  void sample_task();
  ResetResult snapshot() const;
};

}  // namespace uvaa
