#include "uvaa/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace uvaa {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: invalid number for '" + key + "': " + value);
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: invalid integer for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("config: invalid boolean for '" + key + "': " + value);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void fmt(std::string& out, const char* key, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s=%.17g\n", key, v);
  out += buf;
}

}  // namespace

void RunConfig::finalize() {
  env.seed = seed;
  env.validate();
  trainer.validate();
}

void apply_config_key(RunConfig& cfg, const std::string& section, const std::string& key,
                      const std::string& value) {
  if (section == "env") {
    if (key == "n_uavs") cfg.env.n_uavs = static_cast<int>(parse_long(key, value));
    else if (key == "area_half_length") cfg.env.area.half_length = parse_double(key, value);
    else if (key == "h_min") cfg.env.area.h_min = parse_double(key, value);
    else if (key == "h_max") cfg.env.area.h_max = parse_double(key, value);
    else if (key == "d_min") cfg.env.d_min = parse_double(key, value);
    else if (key == "w_rate") cfg.env.w_rate = parse_double(key, value);
    else if (key == "w_altitude") cfg.env.w_altitude = parse_double(key, value);
    else if (key == "w_energy") cfg.env.w_energy = parse_double(key, value);
    else if (key == "w_bs_distance") cfg.env.w_bs_distance = parse_double(key, value);
    else if (key == "w_spacing") cfg.env.w_spacing = parse_double(key, value);
    else if (key == "kappa") cfg.env.kappa = parse_double(key, value);
    else if (key == "collision_penalty") cfg.env.collision_penalty = parse_double(key, value);
    else if (key == "bs_distance_min") cfg.env.bs_distance_min = parse_double(key, value);
    else if (key == "bs_distance_max") cfg.env.bs_distance_max = parse_double(key, value);
    else if (key == "efficiency") cfg.env.efficiency = parse_double(key, value);
    else if (key == "quad_theta") cfg.env.quad.n_theta = static_cast<int>(parse_long(key, value));
    else if (key == "quad_phi") cfg.env.quad.n_phi = static_cast<int>(parse_long(key, value));
    else if (key == "c_env") cfg.env.channel.c_env = parse_double(key, value);
    else if (key == "d_env") cfg.env.channel.d_env = parse_double(key, value);
    else if (key == "mu_los_db") cfg.env.channel.mu_los = db_to_linear(parse_double(key, value));
    else if (key == "mu_nlos_db") cfg.env.channel.mu_nlos = db_to_linear(parse_double(key, value));
    else if (key == "path_loss_exponent") cfg.env.channel.alpha = parse_double(key, value);
    else if (key == "carrier_hz") cfg.env.channel.f_c = parse_double(key, value);
    else if (key == "bandwidth_hz") {
      cfg.env.channel.bandwidth = parse_double(key, value);
      cfg.env.channel.noise_power = noise_from_psd_dbm_hz(-157.0, cfg.env.channel.bandwidth);
    } else if (key == "noise_power_w") cfg.env.channel.noise_power = parse_double(key, value);
    else if (key == "p_total_w") cfg.env.channel.p_total = parse_double(key, value);
    else if (key == "v_climb") cfg.env.energy.v_climb = parse_double(key, value);
    else if (key == "v_descend") cfg.env.energy.v_descend = parse_double(key, value);
    else if (key == "uav_mass") cfg.env.energy.mass = parse_double(key, value);
    else throw ConfigError("config: unknown key '" + key + "' in [env]");
  } else if (section == "trainer") {
    if (key == "kl_threshold") cfg.trainer.kl_threshold = parse_double(key, value);
    else if (key == "n_line_searches") cfg.trainer.n_line_searches = static_cast<int>(parse_long(key, value));
    else if (key == "accept_ratio") cfg.trainer.accept_ratio = parse_double(key, value);
    else if (key == "backtrack_ratio") cfg.trainer.backtrack_ratio = parse_double(key, value);
    else if (key == "cg_iters") cfg.trainer.cg_iters = static_cast<int>(parse_long(key, value));
    else if (key == "cg_damping") cfg.trainer.cg_damping = parse_double(key, value);
    else if (key == "critic_lr") cfg.trainer.critic_lr = parse_double(key, value);
    else if (key == "critic_clip") cfg.trainer.critic_clip = parse_double(key, value);
    else if (key == "max_grad_norm") cfg.trainer.max_grad_norm = parse_double(key, value);
    else if (key == "batch_episodes") cfg.trainer.batch_episodes = static_cast<int>(parse_long(key, value));
    else if (key == "discount") cfg.trainer.discount = parse_double(key, value);
    else if (key == "adv_normalize") cfg.trainer.adv_normalize = parse_bool(key, value);
    else throw ConfigError("config: unknown key '" + key + "' in [trainer]");
  } else if (section == "run") {
    if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
    else if (key == "episodes") cfg.episodes = parse_long(key, value);
    else if (key == "eval_tasks") cfg.eval_tasks = static_cast<int>(parse_long(key, value));
    else if (key == "sweep_samples") cfg.sweep_samples = static_cast<int>(parse_long(key, value));
    else if (key == "gammas") cfg.gammas = parse_double_list(key, value);
    else if (key == "distances") cfg.distances = parse_double_list(key, value);
    else if (key == "metrics_path") cfg.metrics_path = value;
    else if (key == "checkpoint_path") cfg.checkpoint_path = value;
    else if (key == "episode_log_path") cfg.episode_log_path = value;
    else if (key == "output_path") cfg.output_path = value;
    else if (key == "load_checkpoint") cfg.load_checkpoint = value;
    else throw ConfigError("config: unknown key '" + key + "' in [run]");
  } else {
    throw ConfigError("config: unknown section [" + section + "]");
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not key = value");
    if (section.empty())
      throw ConfigError("config: line " + std::to_string(line_no) + " outside any section");
    apply_config_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string canonical_config_string(const RunConfig& cfg) {
  std::string s;
  s.reserve(1024);
  s += "[env]\n";
  fmt(s, "n_uavs", cfg.env.n_uavs);
  fmt(s, "area_half_length", cfg.env.area.half_length);
  fmt(s, "h_min", cfg.env.area.h_min);
  fmt(s, "h_max", cfg.env.area.h_max);
  fmt(s, "d_min", cfg.env.d_min);
  fmt(s, "w_rate", cfg.env.w_rate);
  fmt(s, "w_altitude", cfg.env.w_altitude);
  fmt(s, "w_energy", cfg.env.w_energy);
  fmt(s, "w_bs_distance", cfg.env.w_bs_distance);
  fmt(s, "w_spacing", cfg.env.w_spacing);
  fmt(s, "kappa", cfg.env.kappa);
  fmt(s, "collision_penalty", cfg.env.collision_penalty);
  fmt(s, "bs_distance_min", cfg.env.bs_distance_min);
  fmt(s, "bs_distance_max", cfg.env.bs_distance_max);
  fmt(s, "efficiency", cfg.env.efficiency);
  fmt(s, "quad_theta", cfg.env.quad.n_theta);
  fmt(s, "quad_phi", cfg.env.quad.n_phi);
  fmt(s, "c_env", cfg.env.channel.c_env);
  fmt(s, "d_env", cfg.env.channel.d_env);
  fmt(s, "mu_los", cfg.env.channel.mu_los);
  fmt(s, "mu_nlos", cfg.env.channel.mu_nlos);
  fmt(s, "path_loss_exponent", cfg.env.channel.alpha);
  fmt(s, "carrier_hz", cfg.env.channel.f_c);
  fmt(s, "bandwidth_hz", cfg.env.channel.bandwidth);
  fmt(s, "noise_power_w", cfg.env.channel.noise_power);
  fmt(s, "p_total_w", cfg.env.channel.p_total);
  fmt(s, "p_blade", cfg.env.energy.p_blade);
  fmt(s, "p_induced", cfg.env.energy.p_induced);
  fmt(s, "v_tip", cfg.env.energy.v_tip);
  fmt(s, "v0", cfg.env.energy.v0);
  fmt(s, "d0", cfg.env.energy.d0);
  fmt(s, "rho", cfg.env.energy.rho);
  fmt(s, "rotor_solidity", cfg.env.energy.s);
  fmt(s, "disc_area", cfg.env.energy.disc_area);
  fmt(s, "uav_mass", cfg.env.energy.mass);
  fmt(s, "gravity", cfg.env.energy.g);
  fmt(s, "v_climb", cfg.env.energy.v_climb);
  fmt(s, "v_descend", cfg.env.energy.v_descend);
  s += "[trainer]\n";
  fmt(s, "kl_threshold", cfg.trainer.kl_threshold);
  fmt(s, "n_line_searches", cfg.trainer.n_line_searches);
  fmt(s, "accept_ratio", cfg.trainer.accept_ratio);
  fmt(s, "backtrack_ratio", cfg.trainer.backtrack_ratio);
  fmt(s, "cg_iters", cfg.trainer.cg_iters);
  fmt(s, "cg_damping", cfg.trainer.cg_damping);
  fmt(s, "critic_lr", cfg.trainer.critic_lr);
  fmt(s, "critic_clip", cfg.trainer.critic_clip);
  fmt(s, "max_grad_norm", cfg.trainer.max_grad_norm);
  fmt(s, "batch_episodes", cfg.trainer.batch_episodes);
  fmt(s, "discount", cfg.trainer.discount);
  fmt(s, "adv_normalize", cfg.trainer.adv_normalize ? 1.0 : 0.0);
  return s;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = canonical_config_string(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace uvaa
