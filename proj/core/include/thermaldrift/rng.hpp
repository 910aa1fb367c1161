#pragma once

#include <array>
#include <cstdint>

namespace thermaldrift {

/// splitmix64 step; used for seeding and for deriving per-run seed streams.
uint64_t splitmix64(uint64_t& state);

/// Derives the seed of stream `index` from a master seed. Streams for
/// distinct indices are decorrelated, so batches can hand one to each run
/// and stay independent of scheduling order.
uint64_t derive_stream_seed(uint64_t master, uint64_t index);

/// xoshiro256++ with splitmix64 seeding. The algorithm is fixed here rather
/// than delegated to <random> distributions so that seeded outputs are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform in (0, 1]; safe as a log() argument.
  double next_open_double();

  /// Standard normal via Box-Muller; caches the second variate.
  double next_gaussian();

  /// Uniform in {0, 1, ..., bound - 1} by rejection (no modulo bias).
  uint64_t next_below(uint64_t bound);

 private:
  std::array<uint64_t, 4> state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace thermaldrift
