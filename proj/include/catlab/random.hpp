#pragma once

#include <cstdint>
#include <random>

namespace catlab {

// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of replication `index` under `master_seed`. Depends only on the pair,
// so replications can run in any order or in parallel.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

// Per-replication random stream: std::mt19937_64 (whose output sequence is
// fixed by the standard) seeded with stream_seed. Uniforms are built from the
// top 53 bits, so the sequence is identical on every conforming platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t index)
      : engine_(stream_seed(master_seed, index)) {}

  // Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace catlab
