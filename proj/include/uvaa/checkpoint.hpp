#pragma once

#include <iosfwd>
#include <string>

#include "uvaa/config.hpp"
#include "uvaa/env.hpp"
#include "uvaa/trainer.hpp"

namespace uvaa {

/// JSON checkpoint: architecture descriptors, flat parameter arrays per
/// network, RNG states, and the config hash.
void save_checkpoint(const std::string& path, const Trainer& trainer, const UavEnv& env,
                     const RunConfig& cfg);

/// Restores parameters and RNG states; throws ConfigError when the stored
/// config hash does not match the current configuration.
void load_checkpoint(const std::string& path, Trainer& trainer, UavEnv& env,
                     const RunConfig& cfg);

/// One epoch record as a JSON line with a fixed key order.
void write_metrics_jsonl(const EpochMetrics& m, std::ostream& os);

/// One episode record as a JSON line (task, initial layout, actions,
/// rewards, rate, energy).
void write_episode_jsonl(const EpisodeRecord& rec, std::ostream& os);

}  // namespace uvaa
