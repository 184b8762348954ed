#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uvaa/env.hpp"
#include "uvaa/neural.hpp"

namespace uvaa {

struct TrainerConfig {
  double kl_threshold = 1e-3;  // expected-KL trust region per update
  int n_line_searches = 10;
  double accept_ratio = 0.5;     // required fraction of the linear improvement
  double backtrack_ratio = 0.5;  // step shrink factor per line-search step
  int cg_iters = 10;
  double cg_damping = 1e-2;
  double critic_lr = 5e-3;
  double critic_clip = 0.2;
  double max_grad_norm = 10.0;
  int batch_episodes = 960;  // episodes per on-policy epoch
  double discount = 0.99;    // carried for generality; inert at horizon 1
  bool adv_normalize = true;

  void validate() const;
};

/// One agent's on-policy arrays for an epoch, aligned by episode index
/// across agents. Observation/state vectors are stored pre-scaled for
/// network input.
struct AgentBatch {
  std::vector<std::vector<double>> obs;
  std::vector<std::vector<double>> state;
  std::vector<std::array<double, 4>> actions;  // unit-interval form
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<double> returns;
  std::vector<double> advantages;
};

struct Batch {
  std::vector<AgentBatch> agents;
  std::vector<double> rate;     // per-episode link metrics
  std::vector<double> gain_pt;
  std::vector<double> energy;
  RewardTerms mean_terms;       // averaged over agents and episodes

  std::size_t n_episodes() const { return rate.size(); }
};

/// Fixed per-feature input scaling derived from the config (angles by pi,
/// distances by the box diagonal, coordinates by the box extents) so raw
/// meter-scale observations do not swamp the orthogonally-initialized nets.
struct ObservationScaler {
  std::vector<double> obs_scale;
  std::vector<double> state_scale;

  static ObservationScaler from_config(const EnvConfig& cfg);
  std::vector<double> scale_obs(std::span<const double> raw) const;
  std::vector<double> scale_state(std::span<const double> raw) const;
};

struct AdamState {
  std::vector<double> m, v;
  long t = 0;
};

struct EpochAgentStats {
  double kl = 0.0;
  bool accepted = false;
  bool skipped = false;  // zero gradient or non-positive curvature
  int ls_steps = -1;     // accepted backtrack index, -1 if none
  double grad_norm = 0.0;
  double improvement = 0.0;
  double expected_improvement = 0.0;
  double critic_loss = 0.0;
};

struct EpochMetrics {
  long epoch = 0;
  std::vector<int> permutation;
  std::vector<EpochAgentStats> agents;
  double mean_reward = 0.0;
  double mean_rate = 0.0;
  double mean_gain_pt = 0.0;
  double mean_energy = 0.0;
  RewardTerms mean_terms;
};

struct EpisodeRecord {
  BeamTask task;
  std::vector<UavPose> initial;
  std::vector<Action> actions;
  std::vector<std::array<double, 4>> action_units;
  std::vector<double> rewards;
  StepInfo info;
};
using EpisodeSink = std::function<void(const EpisodeRecord&)>;

/// Iterative solve of apply(x) = b for symmetric positive definite apply.
std::vector<double> conjugate_gradient(
    const std::function<std::vector<double>(std::span<const double>)>& apply,
    std::span<const double> b, int iters, double residual_tol = 1e-10);

struct LineSearchResult {
  bool accepted = false;
  int steps = -1;
  double kl = 0.0;
  double improvement = 0.0;
  double expected_improvement = 0.0;
};

/// Sequential per-agent trust-region updates: each epoch draws a fresh agent
/// permutation, weights every agent's advantage by the compound policy ratio
/// of its already-updated predecessors, solves the damped Fisher system by
/// conjugate gradients, and backtracks until the measured expected KL fits
/// the trust region. Critics take one clipped-regression Adam step per epoch.
class Trainer {
 public:
  Trainer(TrainerConfig cfg, const EnvConfig& env_cfg, std::uint64_t seed);

  int n_agents() const { return static_cast<int>(actors_.size()); }
  const TrainerConfig& config() const { return cfg_; }
  Mlp& actor(int i) { return actors_.at(i); }
  const Mlp& actor(int i) const { return actors_.at(i); }
  Mlp& critic(int i) { return critics_.at(i); }
  const Mlp& critic(int i) const { return critics_.at(i); }
  const ObservationScaler& scaler() const { return scaler_; }
  std::string save_rng_state() const { return rng_.save_state(); }
  void load_rng_state(const std::string& s) { rng_.load_state(s); }

  /// Runs `episodes` single-slot episodes with the current stochastic
  /// policies and returns the filled on-policy buffers.
  Batch collect(UavEnv& env, int episodes, const EpisodeSink& sink = nullptr);

  EpochMetrics train_epoch(Batch& batch, long epoch);

  std::vector<Action> greedy_actions(const std::vector<Observation>& obs,
                                     const AreaBounds& area) const;
  std::vector<Action> sampled_actions(const std::vector<Observation>& obs, const AreaBounds& area,
                                      std::vector<std::array<double, 4>>* units = nullptr);

  BetaParams policy_dist(int agent, std::span<const double> scaled_obs) const;

  // --- update machinery, public so the test suites can drive it directly ---

  /// Per-sample actor state at the current parameters.
  struct ActorEval {
    std::vector<ForwardCache> caches;
    std::vector<std::vector<double>> raw;
    std::vector<std::vector<double>> head_jac;  // sigmoid of raw
    std::vector<BetaParams> dist;
    std::vector<BetaFisherBlocks> fisher;
    std::vector<double> logp;
  };
  ActorEval evaluate_actor(int agent, const AgentBatch& ab) const;

  /// Fills values, returns, and (optionally standardized) advantages.
  void compute_advantages(AgentBatch& ab, int agent) const;

  /// g = (1/B) sum_b m_factors[b] * grad log pi(a_b | o_b).
  std::vector<double> policy_gradient(int agent, const AgentBatch& ab, const ActorEval& eval,
                                      std::span<const double> m_factors) const;

  /// (H + damping I) v for the expected-KL Hessian at the current parameters.
  std::vector<double> fisher_vector_product(int agent, const AgentBatch& ab,
                                            const ActorEval& eval,
                                            std::span<const double> v) const;

  /// Backtracking line search along x = H^-1 g; on acceptance the actor
  /// parameters are replaced and new_logp receives the accepted log-probs.
  LineSearchResult line_search_update(int agent, const AgentBatch& ab, const ActorEval& eval,
                                      std::span<const double> m_factors,
                                      std::span<const double> g, std::span<const double> x,
                                      std::vector<double>* new_logp = nullptr);

  /// One clipped-value-loss Adam step; returns the pre-step loss.
  double critic_update(int agent, const AgentBatch& ab);

 private:
  TrainerConfig cfg_;
  AreaBounds area_;
  ObservationScaler scaler_;
  Rng rng_;
  std::vector<Mlp> actors_;
  std::vector<Mlp> critics_;
  std::vector<AdamState> critic_opt_;
};

}  // namespace uvaa
