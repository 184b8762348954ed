// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
// Usage: acceptance [path-to-cli-binary]   (the CLI path enables criterion 10)

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "uvaa/baselines.hpp"
#include "uvaa/checkpoint.hpp"
#include "uvaa/config.hpp"
#include "uvaa/evaluate.hpp"
#include "uvaa/sweeps.hpp"

using namespace uvaa;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  criterion %2d  %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

ArrayConfig random_box_array(Rng& rng, int n, double wavelength) {
  ArrayConfig cfg;
  cfg.wavelength = wavelength;
  for (int i = 0; i < n; ++i) {
    cfg.poses.push_back(
        {{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(100, 120)}, 1.0});
  }
  return cfg;
}

// Independent sphere average of the gain: rectangle rule in phi (periodic)
// and trapezoid in theta, on nodes distinct from the midpoint grid that
// normalizes the gain itself.
double sphere_average_gain(const ArrayConfig& cfg, const SphericalDir& steer,
                           const QuadratureSpec& quad) {
  const int nt = 181, np = 360;
  const double d_theta = M_PI / (nt - 1);
  const double d_phi = 2.0 * M_PI / np;
  const GainEvaluator ev(cfg, steer, quad);
  // Denominator of the gain, recovered through a unit-excitation probe:
  // G(dir) = 4 pi |AF(dir)|^2 / Q  =>  Q = 4 pi |AF(steer)|^2 / G(steer).
  const double g_steer = ev.gain(1.0);
  const std::complex<double> af_steer = array_factor(cfg, steer, steer);
  const double q = 4.0 * M_PI * std::norm(af_steer) / g_steer;

  double acc = 0.0;
  for (int t = 0; t < nt; ++t) {
    const double theta = t * d_theta;
    const double w_t = (t == 0 || t == nt - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (int p = 0; p < np; ++p) {
      const double phi = -M_PI + (p + 0.5) * d_phi;
      row += std::norm(array_factor(cfg, {theta, phi}, steer));
    }
    acc += row * std::sin(theta) * w_t * d_theta * d_phi;
  }
  const double avg_gain = 4.0 * M_PI * acc / q / (4.0 * M_PI);
  return avg_gain;
}

void criterion_1() {
  Rng rng(1001);
  const double lambda = kSpeedOfLight / 2.4e9;
  const QuadratureSpec quad{181, 360};
  bool ok = true;
  double worst = 0.0, slowest = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ArrayConfig cfg = random_box_array(rng, 16, lambda);
    const SphericalDir steer{rng.uniform(0.5 * M_PI, M_PI), rng.uniform(-M_PI, M_PI)};
    const double t0 = now_seconds();
    const double g = array_gain(cfg, steer, 1.0, quad);
    const double elapsed = now_seconds() - t0;
    slowest = std::max(slowest, elapsed);
    if (elapsed >= 1.0) ok = false;
    if (!(g > 0.0)) ok = false;
    const double avg = sphere_average_gain(cfg, steer, quad);
    worst = std::max(worst, std::abs(avg - 1.0));
    if (std::abs(avg - 1.0) > 0.01) ok = false;
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "max |avg-1| = %.2e, slowest eval %.3f s", worst, slowest);
  report(1, ok, "directivity normalization (20 random 16-element arrays, 181x360)", detail);
}

void criterion_2() {
  Rng rng(1002);
  const double lambda = kSpeedOfLight / 2.4e9;
  bool ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ArrayConfig cfg = random_box_array(rng, 16, lambda);
    double sum = 0.0;
    for (UavPose& p : cfg.poses) {
      p.excitation = rng.uniform();
      sum += p.excitation;
    }
    const SphericalDir steer{rng.uniform(0.0, M_PI), rng.uniform(-M_PI, M_PI)};
    const double af = std::abs(array_factor(cfg, steer, steer));
    worst = std::max(worst, std::abs(af - sum));
    if (std::abs(af - sum) > 1e-9) ok = false;
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max |AF - sum I| = %.2e", worst);
  report(2, ok, "phase compensation |AF(steer)| = sum of excitations (100 arrays)", detail);
}

void criterion_3() {
  const EnergyParams p;
  const double hover = propulsion_power(0.0, p);
  const bool ok = std::abs(hover - 168.42) <= 0.01;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "P(0) = %.5f W", hover);
  report(3, ok, "hover power 168.42 W +/- 0.01", detail);
}

void criterion_4() {
  const EnergyParams p;
  bool ok = true;
  for (int v = 1; v <= 10; ++v) {
    if (!(climb_power(v, p) > propulsion_power(v, p))) ok = false;
  }
  report(4, ok, "climb power exceeds level-flight power for v in 1..10 m/s", "");
}

void criterion_5() {
  Rng rng(1005);
  bool ok = true;
  double worst = 0.0;
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int obs_dim = 6 + static_cast<int>(rng.next_u64() % 10);
    Mlp net({obs_dim, 64, 8}, 1.0, rng);
    for (double& p : net.params()) p = 0.4 * rng.normal();
    std::vector<double> obs(obs_dim);
    for (double& v : obs) v = rng.normal();
    std::vector<double> x(4);
    for (double& v : x) v = 0.05 + 0.9 * rng.uniform();

    ForwardCache cache;
    const std::vector<double> raw = net.forward(obs, &cache);
    const BetaParams dist = actor_head(raw);
    const std::vector<double> jac = actor_head_jacobian(raw);
    std::vector<double> da(4), db(4), cot(8);
    beta_log_prob_grad(dist, x, da, db);
    for (int d = 0; d < 4; ++d) {
      cot[2 * d] = da[d] * jac[2 * d];
      cot[2 * d + 1] = db[d] * jac[2 * d + 1];
    }
    const std::vector<double> grad = net.backward(cache, cot);

    auto logp = [&]() { return beta_log_prob(actor_head(net.forward(obs)), x); };
    for (std::size_t p = 0; p < net.n_params(); p += 53) {
      const double orig = net.params()[p];
      net.params()[p] = orig + h;
      const double up = logp();
      net.params()[p] = orig - h;
      const double dn = logp();
      net.params()[p] = orig;
      const double fd = (up - dn) / (2.0 * h);
      const double rel = std::abs(grad[p] - fd) / std::max({std::abs(grad[p]), std::abs(fd), 1e-3});
      worst = std::max(worst, rel);
      if (rel > 1e-4) ok = false;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max relative error = %.2e", worst);
  report(5, ok, "backprop vs central differences through the Beta head (100 nets)", detail);
}

void criterion_6() {
  EnvConfig env_cfg;
  env_cfg.n_uavs = 4;
  env_cfg.seed = 606;
  env_cfg.quad = {61, 120};
  env_cfg.validate();

  TrainerConfig tc;
  tc.kl_threshold = 0.001;
  tc.batch_episodes = 64;

  UavEnv env(env_cfg);
  Trainer trainer(tc, env_cfg, 607);
  bool ok = true;
  int accepted = 0, rejected_identical = 0, rejected = 0;
  double worst_kl = 0.0;
  for (int e = 1; e <= 6; ++e) {
    Batch batch = trainer.collect(env, tc.batch_episodes);
    std::vector<Mlp> before;
    before.reserve(trainer.n_agents());
    for (int a = 0; a < trainer.n_agents(); ++a) before.push_back(trainer.actor(a));
    const EpochMetrics m = trainer.train_epoch(batch, e);
    for (int a = 0; a < trainer.n_agents(); ++a) {
      const auto& stats = m.agents[a];
      if (stats.accepted) {
        ++accepted;
        // Re-derive the expected KL from the pre-update parameters.
        double kl = 0.0;
        const AgentBatch& ab = batch.agents[a];
        for (std::size_t b = 0; b < ab.obs.size(); ++b) {
          const BetaParams old_dist = actor_head(before[a].forward(ab.obs[b]));
          const BetaParams new_dist = actor_head(trainer.actor(a).forward(ab.obs[b]));
          kl += beta_kl(old_dist, new_dist);
        }
        kl /= static_cast<double>(ab.obs.size());
        worst_kl = std::max(worst_kl, kl);
        if (kl > 0.001 * 1.1) ok = false;
      } else {
        ++rejected;
        const auto pa = before[a].params();
        const auto pb = trainer.actor(a).params();
        bool identical = pa.size() == pb.size();
        for (std::size_t i = 0; identical && i < pa.size(); ++i) identical = pa[i] == pb[i];
        if (identical) ++rejected_identical;
        else ok = false;
      }
    }
  }

  // Guaranteed-rejection probe: zero factors make every improvement zero
  // while the expected improvement stays positive, so no candidate passes.
  {
    Batch batch = trainer.collect(env, 32);
    AgentBatch& ab = batch.agents[0];
    trainer.compute_advantages(ab, 0);
    const auto eval = trainer.evaluate_actor(0, ab);
    const auto g = trainer.policy_gradient(0, ab, eval, ab.advantages);
    auto apply = [&](std::span<const double> v) {
      return trainer.fisher_vector_product(0, ab, eval, v);
    };
    const auto x = conjugate_gradient(apply, g, tc.cg_iters);
    double gx = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) gx += g[i] * x[i];
    if (gx > 0.0) {
      const std::vector<double> theta_before(trainer.actor(0).params().begin(),
                                             trainer.actor(0).params().end());
      const std::vector<double> zeros(ab.obs.size(), 0.0);
      const LineSearchResult res = trainer.line_search_update(0, ab, eval, zeros, g, x);
      if (res.accepted) ok = false;
      ++rejected;
      const auto after = trainer.actor(0).params();
      bool identical = true;
      for (std::size_t i = 0; i < after.size(); ++i)
        if (after[i] != theta_before[i]) identical = false;
      if (identical) ++rejected_identical;
      else ok = false;
    } else {
      ok = false;  // could not even form the probe
    }
  }
  if (accepted == 0) ok = false;

  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "accepted %d (max KL %.2e <= 1.1e-3), rejected %d (all bit-identical: %s)",
                accepted, worst_kl, rejected, rejected == rejected_identical ? "yes" : "NO");
  report(6, ok, "trust-region safety at delta = 0.001", detail);
}

// Shared by criteria 7 and 8: the scaled-down training configuration. The
// trust region is widened for these short runs; the paper-scale default
// (0.001) stays in TrainerConfig and is exercised by criterion 6.
TrainerConfig smoke_trainer_config(int batch) {
  TrainerConfig tc;
  tc.batch_episodes = batch;
  tc.kl_threshold = 0.05;
  return tc;
}

void criterion_7() {
  const double t0 = now_seconds();

  EnvConfig env_cfg;
  env_cfg.n_uavs = 4;
  env_cfg.seed = 707;
  env_cfg.quad = {121, 240};
  env_cfg.validate();
  const TrainerConfig tc = smoke_trainer_config(256);
  const long total_episodes = 2000;
  const long epochs = total_episodes / tc.batch_episodes;  // 7 epochs, 1792 episodes

  UavEnv env(env_cfg);
  Trainer trainer(tc, env_cfg, 708);
  std::vector<double> mean_rewards;
  for (long e = 1; e <= epochs; ++e) {
    Batch batch = trainer.collect(env, tc.batch_episodes);
    mean_rewards.push_back(trainer.train_epoch(batch, e).mean_reward);
  }
  const long k = std::max(1L, epochs / 10);
  double first = 0.0, last = 0.0;
  for (long i = 0; i < k; ++i) {
    first += mean_rewards[i];
    last += mean_rewards[mean_rewards.size() - 1 - i];
  }
  first /= k;
  last /= k;
  const bool reward_ok = (last - first) >= 0.2 * std::abs(first);

  // Greedy vs uniform-random motion energy on paired evaluation episodes.
  EnvConfig eval_cfg = env_cfg;
  eval_cfg.quad = {61, 120};  // gain accuracy is irrelevant for the energy comparison
  eval_cfg.validate();
  const int eval_episodes = 2000;
  double greedy_energy = 0.0, random_energy = 0.0;
  {
    UavEnv eg(eval_cfg);
    for (int e = 0; e < eval_episodes; ++e) {
      const ResetResult rr = eg.reset();
      const StepResult sr = eg.step(trainer.greedy_actions(rr.observations, eval_cfg.area));
      greedy_energy += sr.info.total_energy;
    }
    UavEnv er(eval_cfg);
    Rng policy_rng(7171);
    for (int e = 0; e < eval_episodes; ++e) {
      er.reset();
      std::vector<Action> acts;
      for (int i = 0; i < eval_cfg.n_uavs; ++i) {
        acts.push_back(Action::from_unit({policy_rng.uniform(), policy_rng.uniform(),
                                          policy_rng.uniform(), policy_rng.uniform()},
                                         eval_cfg.area));
      }
      random_energy += er.step(acts).info.total_energy;
    }
  }
  greedy_energy /= eval_episodes;
  random_energy /= eval_episodes;
  const double reduction = 1.0 - greedy_energy / random_energy;
  const bool energy_ok = reduction >= 0.30;

  const double elapsed = now_seconds() - t0;
  const bool time_ok = elapsed <= 600.0;

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "reward %.3f -> %.3f (%+.1f%% of |first|), energy %.0f J vs random %.0f J "
                "(-%.1f%%), %.0f s",
                first, last, 100.0 * (last - first) / std::abs(first), greedy_energy,
                random_energy, 100.0 * reduction, elapsed);
  report(7, reward_ok && energy_ok && time_ok,
         "learning smoke test (4 UAVs, B=256, 2000 episodes)", detail);
}

void criterion_8() {
  EnvConfig env_cfg;
  env_cfg.n_uavs = 16;
  env_cfg.seed = 808;
  env_cfg.quad = {121, 240};
  env_cfg.validate();
  const TrainerConfig tc = smoke_trainer_config(256);

  UavEnv env(env_cfg);
  Trainer trainer(tc, env_cfg, 809);
  for (long e = 1; e <= 12; ++e) {
    Batch batch = trainer.collect(env, tc.batch_episodes);
    trainer.train_epoch(batch, e);
  }

  const int n_tasks = 100;
  double trained = 0.0, baseline = 0.0;
  EnvConfig eval_cfg = env_cfg;
  eval_cfg.quad = {121, 240};
  eval_cfg.validate();
  UavEnv eg(eval_cfg), eb(eval_cfg);  // same seed: identical task sequences
  Rng baseline_rng(8181);
  for (int t = 0; t < n_tasks; ++t) {
    const ResetResult rr = eg.reset();
    trained += eg.step(trainer.greedy_actions(rr.observations, eval_cfg.area)).info.gain_pt;

    eb.reset();
    std::vector<Action> acts;  // random placement, excitations uniform in [0, 1]
    for (int i = 0; i < eval_cfg.n_uavs; ++i) {
      acts.push_back(Action::from_unit({baseline_rng.uniform(), baseline_rng.uniform(),
                                        baseline_rng.uniform(), baseline_rng.uniform()},
                                       eval_cfg.area));
    }
    baseline += eb.step(acts).info.gain_pt;
  }
  trained /= n_tasks;
  baseline /= n_tasks;
  const bool ok = trained >= baseline;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "mean G*Pt trained %.3f W vs random baseline %.3f W",
                trained, baseline);
  report(8, ok, "beamforming advantage of the trained 16-UAV policy (100 tasks)", detail);
}

void criterion_9() {
  EnvConfig cfg;
  cfg.n_uavs = 16;
  cfg.quad = {91, 180};
  cfg.validate();
  const Vec3 center{0.0, 0.0, cfg.area.h_min};
  BeamTask task;
  task.bs = {10000.0, 0.0, 0.0};
  task.ref_point = reference_point(task.bs, cfg.area);
  task.steer = steering_angles(center, task.bs);
  const ArrayConfig layout = raa_layout(16, cfg.channel.wavelength(), center, task.steer, cfg.area);

  const int samples = 10000;
  const auto rows =
      phase_error_sweep(layout, task, cfg, std::vector<double>{5.0, 20.0, 80.0}, samples, 909);
  const bool increasing =
      rows[0].mean_rate < rows[1].mean_rate && rows[1].mean_rate < rows[2].mean_rate;

  const auto huge =
      phase_error_sweep(layout, task, cfg, std::vector<double>{1e6}, samples, 910);
  const double clean = error_free_rate(layout, task, cfg);
  const double rel = std::abs(huge[0].mean_rate - clean) / clean;
  const bool limit_ok = rel <= 0.001;

  char detail[192];
  std::snprintf(detail, sizeof(detail),
                "rates %.4g / %.4g / %.4g bps, gamma=1e6 within %.4f%% of error-free",
                rows[0].mean_rate, rows[1].mean_rate, rows[2].mean_rate, 100.0 * rel);
  report(9, increasing && limit_ok, "phase-error degradation trend (10^4 samples)", detail);
}

bool same_file_bytes(const std::string& a, const std::string& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str() && !sa.str().empty();
}

void criterion_10(const std::string& cli) {
  if (cli.empty()) {
    report(10, false, "CLI determinism", "no CLI path given on the command line");
    return;
  }
  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > acc10_stdout.tmp 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  bool ok = true;
  std::string failed;

  const std::string common = "--n-uavs 3 --quad-theta 61 --quad-phi 120 --seed 4242";
  // train twice: metrics and checkpoint must match byte for byte
  ok &= run("train " + common +
            " --episodes 64 --batch 32 --kl-threshold 0.05 --metrics acc10_m1.jsonl "
            "--checkpoint acc10_c1.json --episode-log acc10_e1.jsonl");
  ok &= run("train " + common +
            " --episodes 64 --batch 32 --kl-threshold 0.05 --metrics acc10_m2.jsonl "
            "--checkpoint acc10_c2.json --episode-log acc10_e2.jsonl");
  if (!same_file_bytes("acc10_m1.jsonl", "acc10_m2.jsonl")) { ok = false; failed += " train-metrics"; }
  if (!same_file_bytes("acc10_c1.json", "acc10_c2.json")) { ok = false; failed += " train-checkpoint"; }
  if (!same_file_bytes("acc10_e1.jsonl", "acc10_e2.jsonl")) { ok = false; failed += " train-episodes"; }

  ok &= run("eval " + common + " --kl-threshold 0.05 --checkpoint acc10_c1.json --tasks 3 --out acc10_v1.jsonl");
  ok &= run("eval " + common + " --kl-threshold 0.05 --checkpoint acc10_c1.json --tasks 3 --out acc10_v2.jsonl");
  if (!same_file_bytes("acc10_v1.jsonl", "acc10_v2.jsonl")) { ok = false; failed += " eval"; }

  ok &= run("baseline " + common + " --type laa --tasks 3 --out acc10_b1.jsonl");
  ok &= run("baseline " + common + " --type laa --tasks 3 --out acc10_b2.jsonl");
  if (!same_file_bytes("acc10_b1.jsonl", "acc10_b2.jsonl")) { ok = false; failed += " baseline"; }

  ok &= run("phase-sweep --n-uavs 4 --quad-theta 61 --quad-phi 120 --seed 4242 "
            "--gammas 5,40 --samples 50 --out acc10_p1.csv");
  ok &= run("phase-sweep --n-uavs 4 --quad-theta 61 --quad-phi 120 --seed 4242 "
            "--gammas 5,40 --samples 50 --out acc10_p2.csv");
  if (!same_file_bytes("acc10_p1.csv", "acc10_p2.csv")) { ok = false; failed += " phase-sweep"; }

  ok &= run("distance-sweep --n-uavs 4 --quad-theta 61 --quad-phi 120 "
            "--distances 2000,10000 --out acc10_d1.csv");
  ok &= run("distance-sweep --n-uavs 4 --quad-theta 61 --quad-phi 120 "
            "--distances 2000,10000 --out acc10_d2.csv");
  if (!same_file_bytes("acc10_d1.csv", "acc10_d2.csv")) { ok = false; failed += " distance-sweep"; }

  report(10, ok, "CLI determinism: identical config and seed give byte-identical files",
         failed.empty() ? "train/eval/baseline/phase-sweep/distance-sweep" : ("mismatch:" + failed));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(cli);
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
