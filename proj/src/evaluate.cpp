#include "uvaa/evaluate.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace uvaa {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vec3_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

Vec3 vec3_from(const ordered_json& j) { return {j.at(0), j.at(1), j.at(2)}; }

}  // namespace

double EvalReport::total_energy() const {
  double e = 0.0;
  for (const TaskResult& t : tasks) e += t.energy_j;
  return e;
}

EvalReport evaluate_policy(UavEnv& env, const Trainer& trainer, int n_tasks) {
  EvalReport report;
  report.tasks.reserve(n_tasks);
  for (int t = 0; t < n_tasks; ++t) {
    const ResetResult rr = t == 0 ? env.reset() : env.next_task();
    const std::vector<Action> acts = trainer.greedy_actions(rr.observations, env.config().area);
    const StepResult sr = env.step(acts);
    report.tasks.push_back({rr.task, sr.info.rate, sr.info.total_energy, sr.info.gain, env.poses()});
  }
  return report;
}

EvalReport evaluate_baseline(UavEnv& env, BaselineType type, int n_tasks) {
  EvalReport report;
  report.tasks.reserve(n_tasks);
  const EnvConfig& cfg = env.config();
  const Vec3 center{0.0, 0.0, cfg.area.h_min};
  for (int t = 0; t < n_tasks; ++t) {
    const ResetResult rr = t == 0 ? env.reset() : env.next_task();
    const SphericalDir steer = steering_angles(center, rr.task.bs);
    const ArrayConfig layout =
        type == BaselineType::laa
            ? laa_layout(cfg.n_uavs, cfg.channel.wavelength(), center, steer, cfg.area)
            : raa_layout(cfg.n_uavs, cfg.channel.wavelength(), center, steer, cfg.area);
    std::vector<Action> acts;
    acts.reserve(layout.poses.size());
    for (const UavPose& p : layout.poses) acts.push_back({p.position, p.excitation});
    const StepResult sr = env.step(acts);
    report.tasks.push_back({rr.task, sr.info.rate, sr.info.total_energy, sr.info.gain, env.poses()});
  }
  return report;
}

void write_eval_jsonl(const EvalReport& report, std::ostream& os) {
  for (const TaskResult& t : report.tasks) {
    ordered_json j;
    j["bs"] = vec3_json(t.task.bs);
    j["ref_point"] = vec3_json(t.task.ref_point);
    j["steer"] = ordered_json::array({t.task.steer.theta, t.task.steer.phi});
    j["rate_bps"] = t.rate;
    j["energy_j"] = t.energy_j;
    j["gain"] = t.gain;
    ordered_json poses = ordered_json::array();
    for (const UavPose& p : t.final_poses)
      poses.push_back(ordered_json::array({p.position.x, p.position.y, p.position.z, p.excitation}));
    j["final_poses"] = poses;
    os << j.dump() << '\n';
  }
}

EvalReport read_eval_jsonl(std::istream& is) {
  EvalReport report;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const ordered_json j = ordered_json::parse(line);
    TaskResult t;
    t.task.bs = vec3_from(j.at("bs"));
    t.task.ref_point = vec3_from(j.at("ref_point"));
    t.task.steer = {j.at("steer").at(0), j.at("steer").at(1)};
    t.rate = j.at("rate_bps");
    t.energy_j = j.at("energy_j");
    t.gain = j.at("gain");
    for (const auto& pj : j.at("final_poses"))
      t.final_poses.push_back({{pj.at(0), pj.at(1), pj.at(2)}, pj.at(3)});
    report.tasks.push_back(std::move(t));
  }
  return report;
}

}  // namespace uvaa
