#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace uvaa {

/// splitmix64 of seed ^ tag; used to derive independent substreams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

/// Deterministic random source. The engine is std::mt19937_64; all
/// distributions are generated from raw 64-bit words so that a (seed,
/// call sequence) pair yields identical values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via the Marsaglia polar method (spare discarded).
  double normal();

  /// Gamma(shape, 1) for shape >= 1 via the Marsaglia-Tsang squeeze.
  double gamma(double shape);

  std::string save_state() const;
  void load_state(const std::string& s);

 private:
  std::mt19937_64 engine_;
};

}  // namespace uvaa
