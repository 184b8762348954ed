#include "uvaa/env.hpp"

#include <cmath>
#include <stdexcept>

namespace uvaa {

void EnvConfig::validate() {
  if (n_uavs < 2) throw std::invalid_argument("EnvConfig: requires n_uavs >= 2");
  area.validate();
  if (!(d_min > 0.0)) throw std::invalid_argument("EnvConfig: requires d_min > 0");
  if (w_rate < 0.0 || w_altitude < 0.0 || w_energy < 0.0 || w_bs_distance < 0.0 ||
      w_spacing < 0.0)
    throw std::invalid_argument("EnvConfig: reward weights must be >= 0");
  if (!(bs_distance_min > 0.0) || !(bs_distance_max >= bs_distance_min))
    throw std::invalid_argument("EnvConfig: invalid station distance range");
  if (!(efficiency >= 0.0 && efficiency <= 1.0))
    throw std::invalid_argument("EnvConfig: efficiency must be in [0, 1]");
  if (reset_max_tries < 1) throw std::invalid_argument("EnvConfig: reset_max_tries must be >= 1");
  quad.validate();
  energy.validate();
  if (kappa <= 0.0) kappa = static_cast<double>(n_uavs) * area.side_length();
  if (channel.p_total <= 0.0) channel.p_total = 0.1 * n_uavs;
  channel.validate();
  if (!(channel.p_total > 0.0))
    throw std::invalid_argument("EnvConfig: p_total must be > 0");
}

std::vector<double> Observation::flat() const {
  std::vector<double> v;
  v.reserve(5 + 2 * others.size() + 3);
  v.push_back(theta);
  v.push_back(phi);
  v.push_back(dist_ref);
  v.push_back(dist_origin);
  v.push_back(excitation);
  for (const auto& [d, exc] : others) {
    v.push_back(d);
    v.push_back(exc);
  }
  v.push_back(ref_point.x);
  v.push_back(ref_point.y);
  v.push_back(ref_point.z);
  return v;
}

Action Action::from_unit(const std::array<double, 4>& u, const AreaBounds& area) {
  Action a;
  a.target.x = -area.half_length + u[0] * area.side_length();
  a.target.y = -area.half_length + u[1] * area.side_length();
  a.target.z = area.h_min + u[2] * (area.h_max - area.h_min);
  a.excitation = u[3];
  return a;
}

std::array<double, 4> Action::to_unit(const AreaBounds& area) const {
  return {(target.x + area.half_length) / area.side_length(),
          (target.y + area.half_length) / area.side_length(),
          (target.z - area.h_min) / (area.h_max - area.h_min), excitation};
}

UavEnv::UavEnv(EnvConfig cfg) : cfg_(std::move(cfg)), rng_(0) {
  cfg_.validate();
  rng_ = Rng(cfg_.seed);
  v_h_ = endurance_speed(cfg_.energy, FlightMode::horizontal);
  p_hover_ = propulsion_power(0.0, cfg_.energy);
  energy_scale_ = p_hover_ * cfg_.area.side_length() / v_h_;
}

void UavEnv::sample_task() {
  const double azimuth = rng_.uniform(-M_PI, M_PI);
  const double dist = rng_.uniform(cfg_.bs_distance_min, cfg_.bs_distance_max);
  task_.bs = {dist * std::cos(azimuth), dist * std::sin(azimuth), 0.0};
  task_.ref_point = reference_point(task_.bs, cfg_.area);

  std::vector<Vec3> positions(poses_.size());
  for (std::size_t i = 0; i < poses_.size(); ++i) positions[i] = poses_[i].position;
  task_.steer = steering_angles(array_origin(positions), task_.bs);
}

ResetResult UavEnv::reset() {
  const int n = cfg_.n_uavs;
  poses_.assign(n, UavPose{});
  int tries = 0;
  for (int i = 0; i < n; ++i) {
    for (;;) {
      if (++tries > cfg_.reset_max_tries * n)
        throw std::runtime_error("UavEnv::reset: area too dense");
      Vec3 p{rng_.uniform(-cfg_.area.half_length, cfg_.area.half_length),
             rng_.uniform(-cfg_.area.half_length, cfg_.area.half_length),
             rng_.uniform(cfg_.area.h_min, cfg_.area.h_max)};
      bool ok = true;
      for (int j = 0; j < i; ++j) {
        if (distance(p, poses_[j].position) < cfg_.d_min) {
          ok = false;
          break;
        }
      }
      if (ok) {
        poses_[i].position = p;
        poses_[i].excitation = 1.0;
        break;
      }
    }
  }
  sample_task();
  return snapshot();
}

ResetResult UavEnv::next_task() {
  if (poses_.empty()) throw std::logic_error("UavEnv::next_task: reset() first");
  sample_task();
  return snapshot();
}

ResetResult UavEnv::snapshot() const {
  ResetResult r;
  r.task = task_;
  r.observations.reserve(poses_.size());
  r.states.reserve(poses_.size());
  for (int i = 0; i < cfg_.n_uavs; ++i) {
    r.observations.push_back(observation(i));
    r.states.push_back(global_state(i));
  }
  return r;
}

Observation UavEnv::observation(int agent) const {
  const UavPose& self = poses_.at(agent);
  std::vector<Vec3> positions(poses_.size());
  for (std::size_t i = 0; i < poses_.size(); ++i) positions[i] = poses_[i].position;
  const Vec3 origin = array_origin(positions);

  Observation o;
  const SphericalDir to_bs = steering_angles(self.position, task_.bs);
  o.theta = to_bs.theta;
  o.phi = to_bs.phi;
  o.dist_ref = distance(self.position, task_.ref_point);
  o.dist_origin = distance(self.position, origin);
  o.excitation = self.excitation;
  o.others.reserve(poses_.size() - 1);
  for (int j = 0; j < cfg_.n_uavs; ++j) {
    if (j == agent) continue;
    o.others.emplace_back(distance(poses_[j].position, self.position), poses_[j].excitation);
  }
  o.ref_point = task_.ref_point;
  return o;
}

GlobalState UavEnv::global_state(int agent) const {
  const Observation o = observation(agent);
  GlobalState s;
  s.values.reserve(state_dim());
  for (const UavPose& p : poses_) {
    s.values.push_back(p.position.x);
    s.values.push_back(p.position.y);
    s.values.push_back(p.position.z);
  }
  for (const UavPose& p : poses_) s.values.push_back(p.excitation);
  s.values.push_back(task_.ref_point.x);
  s.values.push_back(task_.ref_point.y);
  s.values.push_back(task_.ref_point.z);
  s.values.push_back(o.theta);
  s.values.push_back(o.phi);
  s.values.push_back(o.dist_ref);
  s.values.push_back(o.dist_origin);
  for (const auto& [d, exc] : o.others) {
    (void)exc;
    s.values.push_back(d);
  }
  return s;
}

std::pair<std::vector<double>, StepInfo> UavEnv::compute_rewards(
    const std::vector<UavPose>& poses, const BeamTask& task,
    const std::vector<MoveCost>& energies) const {
  const int n = static_cast<int>(poses.size());
  if (static_cast<int>(energies.size()) != n)
    throw std::invalid_argument("compute_rewards: energies size mismatch");

  std::vector<Vec3> positions(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) positions[i] = poses[i].position;
  const Vec3 origin = array_origin(positions);

  StepInfo info;
  info.moves = energies;
  const SphericalDir steer = steering_angles(origin, task.bs);
  ArrayConfig array{poses, cfg_.channel.wavelength()};
  info.gain = array_gain(array, steer, cfg_.efficiency, cfg_.quad);
  info.gain_pt = info.gain * cfg_.channel.p_total;
  info.bs_distance = distance(origin, task.bs);
  info.elevation_deg = elevation_degrees(origin, task.bs);
  info.rate = transmission_rate({info.bs_distance, info.elevation_deg, info.gain}, cfg_.channel);

  info.collisions.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (distance(poses[i].position, poses[j].position) < cfg_.d_min) {
        ++info.collisions[i];
        ++info.collisions[j];
      }
    }
  }

  const double diag = cfg_.area.box_diagonal();
  const double n2 = static_cast<double>(n) * n;
  std::vector<double> rewards(n);
  info.terms.resize(n);
  for (int i = 0; i < n; ++i) {
    RewardTerms& t = info.terms[i];
    t.rate = cfg_.w_rate * info.gain_pt / n2;
    t.altitude = cfg_.w_altitude * poses[i].position.z / cfg_.area.h_max;
    t.energy = -cfg_.w_energy * energies[i].energy_j / energy_scale_;
    t.bs_distance = -cfg_.w_bs_distance * distance(poses[i].position, task.ref_point) / diag;
    double spacing = distance(poses[i].position, origin);
    for (int j = 0; j < n; ++j) {
      if (j != i) spacing += distance(poses[j].position, poses[i].position);
    }
    t.spacing = -cfg_.w_spacing * spacing / cfg_.kappa;
    t.collision = cfg_.collision_penalty * info.collisions[i];
    t.total = t.rate + t.altitude + t.energy + t.bs_distance + t.spacing + t.collision;
    rewards[i] = t.total;
    info.total_energy += energies[i].energy_j;
  }
  return {std::move(rewards), std::move(info)};
}

StepResult UavEnv::step(const std::vector<Action>& actions) {
  if (static_cast<int>(actions.size()) != cfg_.n_uavs)
    throw std::invalid_argument("UavEnv::step: one action per agent required");
  if (poses_.empty()) throw std::logic_error("UavEnv::step: reset() first");

  std::vector<MoveCost> moves(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!cfg_.area.contains(actions[i].target) || actions[i].excitation < 0.0 ||
        actions[i].excitation > 1.0)
      throw std::invalid_argument("UavEnv::step: action outside the constraint box");
    moves[i] = move_energy(poses_[i].position, actions[i].target, cfg_.energy);
    poses_[i].position = actions[i].target;
    poses_[i].excitation = actions[i].excitation;
  }
  auto [rewards, info] = compute_rewards(poses_, task_, moves);
  return {std::move(rewards), std::move(info)};
}

}  // namespace uvaa
