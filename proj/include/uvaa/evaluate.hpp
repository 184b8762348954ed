#pragma once

#include <iosfwd>
#include <vector>

#include "uvaa/baselines.hpp"
#include "uvaa/env.hpp"
#include "uvaa/trainer.hpp"

namespace uvaa {

struct TaskResult {
  BeamTask task;
  double rate = 0.0;      // bits/s
  double energy_j = 0.0;  // motion energy spent reaching this task's layout
  double gain = 0.0;      // linear
  std::vector<UavPose> final_poses;
};

struct EvalReport {
  std::vector<TaskResult> tasks;

  double total_energy() const;
};

/// Greedy rollout of the trained policies over a sequence of tasks. Poses
/// carry over between tasks, so later tasks pay the relocation from the
/// previous layout.
EvalReport evaluate_policy(UavEnv& env, const Trainer& trainer, int n_tasks);

/// Deterministic baseline rollout: for each task the swarm flies from its
/// current poses to the LAA/RAA layout steered at that task's station.
EvalReport evaluate_baseline(UavEnv& env, BaselineType type, int n_tasks);

void write_eval_jsonl(const EvalReport& report, std::ostream& os);
EvalReport read_eval_jsonl(std::istream& is);

}  // namespace uvaa
