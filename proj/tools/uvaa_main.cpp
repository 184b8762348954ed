#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uvaa/checkpoint.hpp"
#include "uvaa/config.hpp"
#include "uvaa/evaluate.hpp"
#include "uvaa/sweeps.hpp"

namespace {

using namespace uvaa;

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> episodes;
  std::optional<int> batch;
  std::optional<int> n_uavs;
  std::optional<double> kl_threshold;
  std::optional<int> eval_tasks;
  std::optional<int> sweep_samples;
  std::vector<double> gammas;
  std::vector<double> distances;
  std::optional<int> quad_theta;
  std::optional<int> quad_phi;
  std::string config_file;
  std::string out;
  std::string metrics;
  std::string checkpoint;
  std::string episode_log;
  std::string load_checkpoint;
};

void add_common(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_file, "key = value config file");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--n-uavs", o.n_uavs, "number of UAVs");
  cmd->add_option("--quad-theta", o.quad_theta, "quadrature theta cells");
  cmd->add_option("--quad-phi", o.quad_phi, "quadrature phi cells");
}

RunConfig build_config(const CliOverrides& o) {
  RunConfig cfg;
  if (!o.config_file.empty()) cfg = load_config_file(o.config_file);
  if (o.seed) cfg.seed = *o.seed;
  if (o.episodes) cfg.episodes = *o.episodes;
  if (o.batch) cfg.trainer.batch_episodes = *o.batch;
  if (o.n_uavs) cfg.env.n_uavs = *o.n_uavs;
  if (o.kl_threshold) cfg.trainer.kl_threshold = *o.kl_threshold;
  if (o.eval_tasks) cfg.eval_tasks = *o.eval_tasks;
  if (o.sweep_samples) cfg.sweep_samples = *o.sweep_samples;
  if (!o.gammas.empty()) cfg.gammas = o.gammas;
  if (!o.distances.empty()) cfg.distances = o.distances;
  if (o.quad_theta) cfg.env.quad.n_theta = *o.quad_theta;
  if (o.quad_phi) cfg.env.quad.n_phi = *o.quad_phi;
  if (!o.out.empty()) cfg.output_path = o.out;
  if (!o.metrics.empty()) cfg.metrics_path = o.metrics;
  if (!o.checkpoint.empty()) cfg.checkpoint_path = o.checkpoint;
  if (!o.episode_log.empty()) cfg.episode_log_path = o.episode_log;
  if (!o.load_checkpoint.empty()) cfg.load_checkpoint = o.load_checkpoint;
  cfg.finalize();
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file '" + path + "'");
  return os;
}

int run_train(const CliOverrides& o) {
  RunConfig cfg = build_config(o);
  UavEnv env(cfg.env);
  Trainer trainer(cfg.trainer, cfg.env, cfg.seed);
  const long epochs = std::max(1L, cfg.episodes / cfg.trainer.batch_episodes);

  std::ofstream metrics_os;
  if (!cfg.metrics_path.empty()) metrics_os = open_out(cfg.metrics_path);
  std::ofstream episodes_os;
  EpisodeSink sink;
  if (!cfg.episode_log_path.empty()) {
    episodes_os = open_out(cfg.episode_log_path);
    sink = [&episodes_os](const EpisodeRecord& rec) { write_episode_jsonl(rec, episodes_os); };
  }

  for (long e = 1; e <= epochs; ++e) {
    Batch batch = trainer.collect(env, cfg.trainer.batch_episodes, sink);
    const EpochMetrics m = trainer.train_epoch(batch, e);
    if (metrics_os.is_open()) write_metrics_jsonl(m, metrics_os);
    std::cout << "epoch " << e << "/" << epochs << " mean_reward=" << m.mean_reward
              << " mean_energy=" << m.mean_energy << " mean_gain_pt=" << m.mean_gain_pt << '\n';
  }
  if (!cfg.checkpoint_path.empty()) save_checkpoint(cfg.checkpoint_path, trainer, env, cfg);
  return 0;
}

int run_eval(const CliOverrides& o) {
  RunConfig cfg = build_config(o);
  if (cfg.load_checkpoint.empty()) throw ConfigError("eval: --checkpoint is required");
  UavEnv env(cfg.env);
  Trainer trainer(cfg.trainer, cfg.env, cfg.seed);
  load_checkpoint(cfg.load_checkpoint, trainer, env, cfg);
  const EvalReport report = evaluate_policy(env, trainer, cfg.eval_tasks);
  if (!cfg.output_path.empty()) {
    auto os = open_out(cfg.output_path);
    write_eval_jsonl(report, os);
  } else {
    write_eval_jsonl(report, std::cout);
  }
  return 0;
}

int run_baseline(const CliOverrides& o, const std::string& type) {
  RunConfig cfg = build_config(o);
  UavEnv env(cfg.env);
  const BaselineType bt = type == "laa" ? BaselineType::laa : BaselineType::raa;
  const EvalReport report = evaluate_baseline(env, bt, cfg.eval_tasks);
  if (!cfg.output_path.empty()) {
    auto os = open_out(cfg.output_path);
    write_eval_jsonl(report, os);
  } else {
    write_eval_jsonl(report, std::cout);
  }
  return 0;
}

int run_phase_sweep(const CliOverrides& o) {
  RunConfig cfg = build_config(o);
  const Vec3 center{0.0, 0.0, cfg.env.area.h_min};
  BeamTask task;
  task.bs = {0.5 * (cfg.env.bs_distance_min + cfg.env.bs_distance_max), 0.0, 0.0};
  task.ref_point = reference_point(task.bs, cfg.env.area);
  task.steer = steering_angles(center, task.bs);
  const ArrayConfig layout =
      raa_layout(cfg.env.n_uavs, cfg.env.channel.wavelength(), center, task.steer, cfg.env.area);
  const auto rows =
      phase_error_sweep(layout, task, cfg.env, cfg.gammas, cfg.sweep_samples, cfg.seed);
  if (!cfg.output_path.empty()) {
    auto os = open_out(cfg.output_path);
    write_sweep_csv(rows, "gamma", os);
  } else {
    write_sweep_csv(rows, "gamma", std::cout);
  }
  return 0;
}

int run_distance_sweep(const CliOverrides& o) {
  RunConfig cfg = build_config(o);
  const auto rows = distance_sweep(cfg.env, cfg.distances);
  if (!cfg.output_path.empty()) {
    auto os = open_out(cfg.output_path);
    write_sweep_csv(rows, "distance_m", os);
  } else {
    write_sweep_csv(rows, "distance_m", std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV virtual antenna array: collaborative beamforming simulation and training"};
  app.require_subcommand(1);

  CliOverrides o;
  std::string baseline_type = "laa";

  CLI::App* train = app.add_subcommand("train", "train policies with trust-region updates");
  add_common(train, o);
  train->add_option("--episodes", o.episodes, "total training episodes");
  train->add_option("--batch", o.batch, "episodes per epoch");
  train->add_option("--kl-threshold", o.kl_threshold, "trust region size");
  train->add_option("--metrics", o.metrics, "metrics JSONL output path");
  train->add_option("--checkpoint", o.checkpoint, "checkpoint output path");
  train->add_option("--episode-log", o.episode_log, "per-episode JSONL output path");

  CLI::App* eval = app.add_subcommand("eval", "greedy evaluation of a trained checkpoint");
  add_common(eval, o);
  eval->add_option("--checkpoint", o.load_checkpoint, "checkpoint to load")->required();
  eval->add_option("--tasks", o.eval_tasks, "number of sequential tasks");
  eval->add_option("--out", o.out, "report JSONL output path");

  CLI::App* baseline = app.add_subcommand("baseline", "deterministic LAA/RAA baseline evaluation");
  add_common(baseline, o);
  baseline->add_option("--type", baseline_type, "laa or raa")
      ->check(CLI::IsMember({"laa", "raa"}));
  baseline->add_option("--tasks", o.eval_tasks, "number of sequential tasks");
  baseline->add_option("--out", o.out, "report JSONL output path");

  CLI::App* phase = app.add_subcommand("phase-sweep", "rate under Tikhonov phase errors");
  add_common(phase, o);
  phase->add_option("--gammas", o.gammas, "concentration values")->delimiter(',');
  phase->add_option("--samples", o.sweep_samples, "Monte-Carlo samples per gamma");
  phase->add_option("--out", o.out, "CSV output path");

  CLI::App* dist = app.add_subcommand("distance-sweep", "error-free rate versus distance");
  add_common(dist, o);
  dist->add_option("--distances", o.distances, "station distances in meters")->delimiter(',');
  dist->add_option("--out", o.out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return run_train(o);
    if (eval->parsed()) return run_eval(o);
    if (baseline->parsed()) return run_baseline(o, baseline_type);
    if (phase->parsed()) return run_phase_sweep(o);
    if (dist->parsed()) return run_distance_sweep(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
