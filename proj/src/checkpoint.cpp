#include "uvaa/checkpoint.hpp"

#include <fstream>
#include <ostream>

#include "json.hpp"

namespace uvaa {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json net_json(const Mlp& net) {
  ordered_json j;
  j["input"] = net.shape().input;
  j["hidden"] = net.shape().hidden;
  j["output"] = net.shape().output;
  j["params"] = std::vector<double>(net.params().begin(), net.params().end());
  return j;
}

void load_net(const ordered_json& j, Mlp& net) {
  if (j.at("input") != net.shape().input || j.at("hidden") != net.shape().hidden ||
      j.at("output") != net.shape().output)
    throw ConfigError("checkpoint: network architecture mismatch");
  const std::vector<double> params = j.at("params").get<std::vector<double>>();
  if (params.size() != net.n_params())
    throw ConfigError("checkpoint: parameter count mismatch");
  std::copy(params.begin(), params.end(), net.params().begin());
}

}  // namespace

void save_checkpoint(const std::string& path, const Trainer& trainer, const UavEnv& env,
                     const RunConfig& cfg) {
  ordered_json j;
  j["format"] = "uvaa-checkpoint-v1";
  j["config_hash"] = config_hash(cfg);
  j["env_rng"] = env.save_rng_state();
  j["trainer_rng"] = trainer.save_rng_state();
  ordered_json agents = ordered_json::array();
  for (int i = 0; i < trainer.n_agents(); ++i) {
    ordered_json a;
    a["actor"] = net_json(trainer.actor(i));
    a["critic"] = net_json(trainer.critic(i));
    agents.push_back(std::move(a));
  }
  j["agents"] = std::move(agents);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("checkpoint: cannot write '" + path + "'");
  out << j.dump() << '\n';
}

void load_checkpoint(const std::string& path, Trainer& trainer, UavEnv& env,
                     const RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("checkpoint: cannot open '" + path + "'");
  ordered_json j;
  in >> j;
  if (j.at("format") != "uvaa-checkpoint-v1")
    throw ConfigError("checkpoint: unsupported format");
  if (j.at("config_hash") != config_hash(cfg))
    throw ConfigError("checkpoint: config hash mismatch; the stored model was trained "
                      "under a different configuration");
  const auto& agents = j.at("agents");
  if (static_cast<int>(agents.size()) != trainer.n_agents())
    throw ConfigError("checkpoint: agent count mismatch");
  for (int i = 0; i < trainer.n_agents(); ++i) {
    load_net(agents.at(i).at("actor"), trainer.actor(i));
    load_net(agents.at(i).at("critic"), trainer.critic(i));
  }
  env.load_rng_state(j.at("env_rng"));
  trainer.load_rng_state(j.at("trainer_rng"));
}

void write_metrics_jsonl(const EpochMetrics& m, std::ostream& os) {
  ordered_json j;
  j["epoch"] = m.epoch;
  j["permutation"] = m.permutation;
  j["mean_reward"] = m.mean_reward;
  j["mean_rate_bps"] = m.mean_rate;
  j["mean_gain_pt"] = m.mean_gain_pt;
  j["mean_energy_j"] = m.mean_energy;
  ordered_json terms;
  terms["rate"] = m.mean_terms.rate;
  terms["altitude"] = m.mean_terms.altitude;
  terms["energy"] = m.mean_terms.energy;
  terms["bs_distance"] = m.mean_terms.bs_distance;
  terms["spacing"] = m.mean_terms.spacing;
  terms["collision"] = m.mean_terms.collision;
  j["mean_terms"] = std::move(terms);
  ordered_json agents = ordered_json::array();
  for (const EpochAgentStats& s : m.agents) {
    ordered_json a;
    a["kl"] = s.kl;
    a["accepted"] = s.accepted;
    a["skipped"] = s.skipped;
    a["ls_steps"] = s.ls_steps;
    a["grad_norm"] = s.grad_norm;
    a["improvement"] = s.improvement;
    a["expected_improvement"] = s.expected_improvement;
    a["critic_loss"] = s.critic_loss;
    agents.push_back(std::move(a));
  }
  j["agents"] = std::move(agents);
  os << j.dump() << '\n';
}

void write_episode_jsonl(const EpisodeRecord& rec, std::ostream& os) {
  ordered_json j;
  j["bs"] = {rec.task.bs.x, rec.task.bs.y, rec.task.bs.z};
  j["ref_point"] = {rec.task.ref_point.x, rec.task.ref_point.y, rec.task.ref_point.z};
  ordered_json initial = ordered_json::array();
  for (const UavPose& p : rec.initial)
    initial.push_back({p.position.x, p.position.y, p.position.z, p.excitation});
  j["initial"] = std::move(initial);
  ordered_json actions = ordered_json::array();
  for (const auto& u : rec.action_units) actions.push_back({u[0], u[1], u[2], u[3]});
  j["actions_unit"] = std::move(actions);
  j["rewards"] = rec.rewards;
  j["rate_bps"] = rec.info.rate;
  j["gain"] = rec.info.gain;
  j["energy_j"] = rec.info.total_energy;
  os << j.dump() << '\n';
}

}  // namespace uvaa
