#include "uvaa/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uvaa {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

void TrainerConfig::validate() const {
  if (!(kl_threshold > 0.0)) throw std::invalid_argument("TrainerConfig: kl_threshold must be > 0");
  if (n_line_searches < 1) throw std::invalid_argument("TrainerConfig: n_line_searches must be >= 1");
  if (!(accept_ratio > 0.0 && accept_ratio < 1.0))
    throw std::invalid_argument("TrainerConfig: accept_ratio must be in (0, 1)");
  if (!(backtrack_ratio > 0.0 && backtrack_ratio < 1.0))
    throw std::invalid_argument("TrainerConfig: backtrack_ratio must be in (0, 1)");
  if (cg_iters < 1 || !(cg_damping >= 0.0))
    throw std::invalid_argument("TrainerConfig: invalid conjugate gradient settings");
  if (!(critic_lr > 0.0) || !(critic_clip > 0.0) || !(max_grad_norm > 0.0))
    throw std::invalid_argument("TrainerConfig: critic settings must be positive");
  if (batch_episodes < 1) throw std::invalid_argument("TrainerConfig: batch_episodes must be >= 1");
  if (!(discount >= 0.0 && discount <= 1.0))
    throw std::invalid_argument("TrainerConfig: discount must be in [0, 1]");
}

ObservationScaler ObservationScaler::from_config(const EnvConfig& cfg) {
  const double inv_pi = 1.0 / M_PI;
  const double inv_diag = 1.0 / cfg.area.box_diagonal();
  const double inv_half = 1.0 / cfg.area.half_length;
  const double inv_h = 1.0 / cfg.area.h_max;
  const int n = cfg.n_uavs;

  ObservationScaler s;
  s.obs_scale = {inv_pi, inv_pi, inv_diag, inv_diag, 1.0};
  for (int j = 0; j < n - 1; ++j) {
    s.obs_scale.push_back(inv_diag);
    s.obs_scale.push_back(1.0);
  }
  s.obs_scale.push_back(inv_half);
  s.obs_scale.push_back(inv_half);
  s.obs_scale.push_back(inv_h);

  for (int j = 0; j < n; ++j) {
    s.state_scale.push_back(inv_half);
    s.state_scale.push_back(inv_half);
    s.state_scale.push_back(inv_h);
  }
  for (int j = 0; j < n; ++j) s.state_scale.push_back(1.0);
  s.state_scale.push_back(inv_half);
  s.state_scale.push_back(inv_half);
  s.state_scale.push_back(inv_h);
  s.state_scale.insert(s.state_scale.end(), {inv_pi, inv_pi, inv_diag, inv_diag});
  for (int j = 0; j < n - 1; ++j) s.state_scale.push_back(inv_diag);
  return s;
}

std::vector<double> ObservationScaler::scale_obs(std::span<const double> raw) const {
  if (raw.size() != obs_scale.size())
    throw std::invalid_argument("ObservationScaler: observation dimension mismatch");
  std::vector<double> v(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) v[i] = raw[i] * obs_scale[i];
  return v;
}

std::vector<double> ObservationScaler::scale_state(std::span<const double> raw) const {
  if (raw.size() != state_scale.size())
    throw std::invalid_argument("ObservationScaler: state dimension mismatch");
  std::vector<double> v(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) v[i] = raw[i] * state_scale[i];
  return v;
}

std::vector<double> conjugate_gradient(
    const std::function<std::vector<double>(std::span<const double>)>& apply,
    std::span<const double> b, int iters, double residual_tol) {
  std::vector<double> x(b.size(), 0.0);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> p = r;
  double rs = dot(r, r);
  for (int it = 0; it < iters && rs > residual_tol * residual_tol; ++it) {
    const std::vector<double> ap = apply(p);
    const double p_ap = dot(p, ap);
    if (!(p_ap > 0.0)) break;  // lost positive definiteness numerically
    const double alpha = rs / p_ap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    const double rs_new = dot(r, r);
    const double beta = rs_new / rs;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rs = rs_new;
  }
  return x;
}

Trainer::Trainer(TrainerConfig cfg, const EnvConfig& env_cfg, std::uint64_t seed)
    : cfg_(cfg), area_(env_cfg.area), rng_(mix_seed(seed, 0x7261696e)) {
  cfg_.validate();
  const int n = env_cfg.n_uavs;
  const int obs_dim = 5 + 2 * (n - 1) + 3;
  const int state_dim = 5 * n + 6;
  scaler_ = ObservationScaler::from_config(env_cfg);
  actors_.reserve(n);
  critics_.reserve(n);
  critic_opt_.resize(n);
  for (int i = 0; i < n; ++i) {
    Rng init_rng(mix_seed(seed, 0x696e6974 + static_cast<std::uint64_t>(i)));
    actors_.emplace_back(MlpShape{obs_dim, 64, 8}, 0.01, init_rng);
    critics_.emplace_back(MlpShape{state_dim, 64, 1}, 1.0, init_rng);
    critic_opt_[i].m.assign(critics_[i].n_params(), 0.0);
    critic_opt_[i].v.assign(critics_[i].n_params(), 0.0);
  }
}

BetaParams Trainer::policy_dist(int agent, std::span<const double> scaled_obs) const {
  return actor_head(actors_.at(agent).forward(scaled_obs));
}

std::vector<Action> Trainer::greedy_actions(const std::vector<Observation>& obs,
                                            const AreaBounds& area) const {
  std::vector<Action> acts;
  acts.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const BetaParams p = policy_dist(static_cast<int>(i), scaler_.scale_obs(obs[i].flat()));
    const std::vector<double> mean = beta_mean(p);
    acts.push_back(Action::from_unit({mean[0], mean[1], mean[2], mean[3]}, area));
  }
  return acts;
}

std::vector<Action> Trainer::sampled_actions(const std::vector<Observation>& obs,
                                             const AreaBounds& area,
                                             std::vector<std::array<double, 4>>* units) {
  std::vector<Action> acts;
  acts.reserve(obs.size());
  if (units) units->clear();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const BetaParams p = policy_dist(static_cast<int>(i), scaler_.scale_obs(obs[i].flat()));
    const std::vector<double> x = beta_sample(p, rng_);
    const std::array<double, 4> u{x[0], x[1], x[2], x[3]};
    if (units) units->push_back(u);
    acts.push_back(Action::from_unit(u, area));
  }
  return acts;
}

Batch Trainer::collect(UavEnv& env, int episodes, const EpisodeSink& sink) {
  Batch batch;
  batch.agents.resize(n_agents());
  double terms_count = 0.0;
  for (int e = 0; e < episodes; ++e) {
    const ResetResult rr = env.reset();
    std::vector<UavPose> initial;
    if (sink) initial = env.poses();
    std::vector<std::array<double, 4>> units;
    const std::vector<Action> actions = sampled_actions(rr.observations, area_, &units);
    const StepResult sr = env.step(actions);
    for (int a = 0; a < n_agents(); ++a) {
      AgentBatch& ab = batch.agents[a];
      ab.obs.push_back(scaler_.scale_obs(rr.observations[a].flat()));
      ab.state.push_back(scaler_.scale_state(rr.states[a].values));
      ab.actions.push_back(units[a]);
      ab.rewards.push_back(sr.rewards[a]);
      const RewardTerms& t = sr.info.terms[a];
      batch.mean_terms.rate += t.rate;
      batch.mean_terms.altitude += t.altitude;
      batch.mean_terms.energy += t.energy;
      batch.mean_terms.bs_distance += t.bs_distance;
      batch.mean_terms.spacing += t.spacing;
      batch.mean_terms.collision += t.collision;
      batch.mean_terms.total += t.total;
      terms_count += 1.0;
    }
    batch.rate.push_back(sr.info.rate);
    batch.gain_pt.push_back(sr.info.gain_pt);
    batch.energy.push_back(sr.info.total_energy);
    if (sink) sink(EpisodeRecord{rr.task, std::move(initial), actions, units, sr.rewards, sr.info});
  }
  if (terms_count > 0.0) {
    batch.mean_terms.rate /= terms_count;
    batch.mean_terms.altitude /= terms_count;
    batch.mean_terms.energy /= terms_count;
    batch.mean_terms.bs_distance /= terms_count;
    batch.mean_terms.spacing /= terms_count;
    batch.mean_terms.collision /= terms_count;
    batch.mean_terms.total /= terms_count;
  }
  return batch;
}

void Trainer::compute_advantages(AgentBatch& ab, int agent) const {
  const std::size_t b = ab.obs.size();
  ab.values.resize(b);
  ab.returns.resize(b);
  ab.advantages.resize(b);
  for (std::size_t i = 0; i < b; ++i) {
    ab.values[i] = critics_.at(agent).forward(ab.state[i])[0];
    ab.returns[i] = ab.rewards[i];  // single-slot episodes: R = r for any discount
    ab.advantages[i] = ab.returns[i] - ab.values[i];
  }
  if (cfg_.adv_normalize && b > 1) {
    double mean = 0.0;
    for (double a : ab.advantages) mean += a;
    mean /= static_cast<double>(b);
    double var = 0.0;
    for (double a : ab.advantages) var += (a - mean) * (a - mean);
    var /= static_cast<double>(b);
    const double inv_std = 1.0 / std::sqrt(var + 1e-8);
    for (double& a : ab.advantages) a = (a - mean) * inv_std;
  }
}

Trainer::ActorEval Trainer::evaluate_actor(int agent, const AgentBatch& ab) const {
  const std::size_t b = ab.obs.size();
  ActorEval ev;
  ev.caches.resize(b);
  ev.raw.resize(b);
  ev.head_jac.resize(b);
  ev.dist.resize(b);
  ev.fisher.resize(b);
  ev.logp.resize(b);
  for (std::size_t i = 0; i < b; ++i) {
    ev.raw[i] = actors_.at(agent).forward(ab.obs[i], &ev.caches[i]);
    ev.head_jac[i] = actor_head_jacobian(ev.raw[i]);
    ev.dist[i] = actor_head(ev.raw[i]);
    ev.fisher[i] = beta_kl_hessian(ev.dist[i]);
    ev.logp[i] = beta_log_prob(ev.dist[i], ab.actions[i]);
  }
  return ev;
}

std::vector<double> Trainer::policy_gradient(int agent, const AgentBatch& ab,
                                             const ActorEval& eval,
                                             std::span<const double> m_factors) const {
  const std::size_t b = ab.obs.size();
  if (m_factors.size() != b) throw std::invalid_argument("policy_gradient: factor size mismatch");
  const Mlp& actor = actors_.at(agent);
  std::vector<double> g(actor.n_params(), 0.0);
  const std::size_t dims = 4;
  std::vector<double> da(dims), db(dims), cot(2 * dims);
  for (std::size_t i = 0; i < b; ++i) {
    beta_log_prob_grad(eval.dist[i], ab.actions[i], da, db);
    for (std::size_t d = 0; d < dims; ++d) {
      cot[2 * d] = m_factors[i] * da[d] * eval.head_jac[i][2 * d];
      cot[2 * d + 1] = m_factors[i] * db[d] * eval.head_jac[i][2 * d + 1];
    }
    const std::vector<double> gb = actor.backward(eval.caches[i], cot);
    axpy(1.0 / static_cast<double>(b), gb, g);
  }
  return g;
}

std::vector<double> Trainer::fisher_vector_product(int agent, const AgentBatch& ab,
                                                   const ActorEval& eval,
                                                   std::span<const double> v) const {
  const Mlp& actor = actors_.at(agent);
  if (v.size() != actor.n_params())
    throw std::invalid_argument("fisher_vector_product: vector size mismatch");
  const std::size_t b = ab.obs.size();
  std::vector<double> hv(v.size(), 0.0);
  const std::size_t dims = 4;
  std::vector<double> cot(2 * dims);
  for (std::size_t i = 0; i < b; ++i) {
    // At the evaluation point the KL gradient vanishes, so the exact Hessian
    // reduces to J^T F J with F the per-dimension Beta Fisher blocks.
    const std::vector<double> draw = actor.forward_tangent(eval.caches[i], v);
    const std::vector<double>& jac = eval.head_jac[i];
    const BetaFisherBlocks& f = eval.fisher[i];
    for (std::size_t d = 0; d < dims; ++d) {
      const double dalpha = jac[2 * d] * draw[2 * d];
      const double dbeta = jac[2 * d + 1] * draw[2 * d + 1];
      const double ca = f.aa[d] * dalpha + f.ab[d] * dbeta;
      const double cb = f.ab[d] * dalpha + f.bb[d] * dbeta;
      cot[2 * d] = jac[2 * d] * ca;
      cot[2 * d + 1] = jac[2 * d + 1] * cb;
    }
    const std::vector<double> gb = actor.backward(eval.caches[i], cot);
    axpy(1.0 / static_cast<double>(b), gb, hv);
  }
  axpy(cfg_.cg_damping, v, hv);
  return hv;
}

LineSearchResult Trainer::line_search_update(int agent, const AgentBatch& ab,
                                             const ActorEval& eval,
                                             std::span<const double> m_factors,
                                             std::span<const double> g,
                                             std::span<const double> x,
                                             std::vector<double>* new_logp) {
  LineSearchResult res;
  Mlp& actor = actors_.at(agent);
  const std::size_t b = ab.obs.size();
  const double g_dot_x = dot(g, x);
  if (!(g_dot_x > 0.0)) return res;  // flagged by the caller as skipped

  const double step_scale = std::sqrt(2.0 * cfg_.kl_threshold / g_dot_x);
  double surrogate_old = 0.0;
  for (std::size_t i = 0; i < b; ++i) surrogate_old += m_factors[i];
  surrogate_old /= static_cast<double>(b);

  const std::vector<double> theta_old(actor.params().begin(), actor.params().end());
  std::vector<double> logp_new(b);
  double coef = 1.0;
  for (int j = 0; j < cfg_.n_line_searches; ++j, coef *= cfg_.backtrack_ratio) {
    std::span<double> theta = actor.params();
    for (std::size_t p = 0; p < theta.size(); ++p)
      theta[p] = theta_old[p] + coef * step_scale * x[p];

    double kl = 0.0, surrogate = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      const BetaParams dist = actor_head(actor.forward(ab.obs[i]));
      kl += beta_kl(eval.dist[i], dist);
      logp_new[i] = beta_log_prob(dist, ab.actions[i]);
      surrogate += std::exp(logp_new[i] - eval.logp[i]) * m_factors[i];
    }
    kl /= static_cast<double>(b);
    surrogate /= static_cast<double>(b);

    const double improvement = surrogate - surrogate_old;
    const double expected = coef * step_scale * g_dot_x;
    if (kl <= cfg_.kl_threshold && improvement >= cfg_.accept_ratio * expected) {
      res.accepted = true;
      res.steps = j;
      res.kl = kl;
      res.improvement = improvement;
      res.expected_improvement = expected;
      if (new_logp) *new_logp = std::move(logp_new);
      return res;
    }
  }
  std::copy(theta_old.begin(), theta_old.end(), actor.params().begin());
  return res;
}

double Trainer::critic_update(int agent, const AgentBatch& ab) {
  Mlp& critic = critics_.at(agent);
  AdamState& opt = critic_opt_.at(agent);
  const std::size_t b = ab.state.size();
  if (ab.values.size() != b || ab.returns.size() != b)
    throw std::logic_error("critic_update: compute_advantages must run first");

  std::vector<double> grad(critic.n_params(), 0.0);
  double loss = 0.0;
  ForwardCache cache;
  for (std::size_t i = 0; i < b; ++i) {
    const double v = critic.forward(ab.state[i], &cache)[0];
    const double v_old = ab.values[i];
    const double r = ab.returns[i];
    const double v_clip = v_old + std::clamp(v - v_old, -cfg_.critic_clip, cfg_.critic_clip);
    const double l_raw = (v - r) * (v - r);
    const double l_clip = (v_clip - r) * (v_clip - r);
    double dv;
    if (l_raw >= l_clip) {
      loss += l_raw;
      dv = 2.0 * (v - r);
    } else {
      loss += l_clip;
      dv = std::abs(v - v_old) < cfg_.critic_clip ? 2.0 * (v_clip - r) : 0.0;
    }
    const double out_grad[1] = {dv / static_cast<double>(b)};
    const std::vector<double> gb = critic.backward(cache, out_grad);
    axpy(1.0, gb, grad);
  }
  loss /= static_cast<double>(b);

  const double norm = std::sqrt(dot(grad, grad));
  if (norm > cfg_.max_grad_norm) {
    const double scale = cfg_.max_grad_norm / norm;
    for (double& v : grad) v *= scale;
  }

  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  opt.t += 1;
  const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(opt.t));
  const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(opt.t));
  std::span<double> theta = critic.params();
  for (std::size_t p = 0; p < theta.size(); ++p) {
    opt.m[p] = kBeta1 * opt.m[p] + (1.0 - kBeta1) * grad[p];
    opt.v[p] = kBeta2 * opt.v[p] + (1.0 - kBeta2) * grad[p] * grad[p];
    const double m_hat = opt.m[p] / bc1;
    const double v_hat = opt.v[p] / bc2;
    theta[p] -= cfg_.critic_lr * m_hat / (std::sqrt(v_hat) + kEps);
  }
  return loss;
}

EpochMetrics Trainer::train_epoch(Batch& batch, long epoch) {
  const std::size_t b = batch.n_episodes();
  if (b == 0) throw std::invalid_argument("train_epoch: empty batch");

  EpochMetrics metrics;
  metrics.epoch = epoch;
  metrics.agents.resize(n_agents());
  metrics.mean_terms = batch.mean_terms;
  for (std::size_t i = 0; i < b; ++i) {
    metrics.mean_rate += batch.rate[i];
    metrics.mean_gain_pt += batch.gain_pt[i];
    metrics.mean_energy += batch.energy[i];
  }
  metrics.mean_rate /= static_cast<double>(b);
  metrics.mean_gain_pt /= static_cast<double>(b);
  metrics.mean_energy /= static_cast<double>(b);
  double reward_sum = 0.0;
  for (const AgentBatch& ab : batch.agents)
    reward_sum += std::accumulate(ab.rewards.begin(), ab.rewards.end(), 0.0);
  metrics.mean_reward = reward_sum / (static_cast<double>(b) * n_agents());

  // Fresh random permutation each epoch (Fisher-Yates on the trainer stream).
  metrics.permutation.resize(n_agents());
  std::iota(metrics.permutation.begin(), metrics.permutation.end(), 0);
  for (int i = n_agents() - 1; i > 0; --i) {
    const int j = static_cast<int>(rng_.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(metrics.permutation[i], metrics.permutation[j]);
  }

  std::vector<double> compound(b, 1.0);
  std::vector<double> m_factors(b);
  for (int agent : metrics.permutation) {
    AgentBatch& ab = batch.agents[agent];
    EpochAgentStats& stats = metrics.agents[agent];
    compute_advantages(ab, agent);
    for (std::size_t i = 0; i < b; ++i) m_factors[i] = compound[i] * ab.advantages[i];

    const ActorEval eval = evaluate_actor(agent, ab);
    const std::vector<double> g = policy_gradient(agent, ab, eval, m_factors);
    stats.grad_norm = std::sqrt(dot(g, g));
    if (stats.grad_norm < 1e-12) {
      stats.skipped = true;
      stats.critic_loss = critic_update(agent, ab);
      continue;
    }
    auto apply = [&](std::span<const double> v) {
      return fisher_vector_product(agent, ab, eval, v);
    };
    const std::vector<double> x = conjugate_gradient(apply, g, cfg_.cg_iters);
    if (!(dot(g, x) > 0.0)) {
      stats.skipped = true;
      stats.critic_loss = critic_update(agent, ab);
      continue;
    }
    std::vector<double> new_logp;
    const LineSearchResult res = line_search_update(agent, ab, eval, m_factors, g, x, &new_logp);
    stats.accepted = res.accepted;
    stats.ls_steps = res.steps;
    stats.kl = res.kl;
    stats.improvement = res.improvement;
    stats.expected_improvement = res.expected_improvement;
    if (res.accepted) {
      for (std::size_t i = 0; i < b; ++i) compound[i] *= std::exp(new_logp[i] - eval.logp[i]);
    }
    stats.critic_loss = critic_update(agent, ab);
  }
  return metrics;
}

}  // namespace uvaa
