#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uvaa/env.hpp"
#include "uvaa/trainer.hpp"

namespace uvaa {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a CLI invocation needs: the environment and trainer records
/// plus run-level knobs. Populated from defaults, then an optional key=value
/// config file, then command-line flag overrides.
struct RunConfig {
  EnvConfig env;
  TrainerConfig trainer;
  std::uint64_t seed = 12345;
  long episodes = 400000;
  int eval_tasks = 2;
  int sweep_samples = 10000;
  std::vector<double> gammas = {5.0, 20.0, 80.0};
  std::vector<double> distances = {2000, 4000, 6000, 8000, 10000, 12000, 14000, 16000, 18000, 20000};
  std::string metrics_path;
  std::string checkpoint_path;
  std::string episode_log_path;
  std::string output_path;
  std::string load_checkpoint;

  /// Applies the seed to the env record and validates both sub-configs.
  void finalize();
};

/// Parses a sectioned key=value file ([env], [trainer], [run]; '#' comments)
/// over the defaults. Unknown sections or keys raise ConfigError.
RunConfig load_config_file(const std::string& path);

/// Applies one key to the given section; shared by the file parser and the
/// CLI override path.
void apply_config_key(RunConfig& cfg, const std::string& section, const std::string& key,
                      const std::string& value);

/// Canonical text dump of the env and trainer records; stable across runs.
std::string canonical_config_string(const RunConfig& cfg);

/// FNV-1a hash of the canonical dump, as a fixed-width hex string.
std::string config_hash(const RunConfig& cfg);

}  // namespace uvaa
