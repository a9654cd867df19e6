#pragma once

#include <cstdint>
#include <random>

namespace repsc {

/// Deterministic uniform generator used by every sampler in this library.
///
/// The generator is std::mt19937_64 (output sequence fixed by the C++
/// standard) and doubles are produced with the fixed 53-bit mapping
/// (x >> 11) * 2^-53, so a given seed yields the same stream on every
/// platform. Standard-library distributions are avoided on purpose: their
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Requires n > 0.
  std::int64_t uniform_index(std::int64_t n) {
    auto idx = static_cast<std::int64_t>(uniform() * static_cast<double>(n));
    return idx >= n ? n - 1 : idx;
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Derives an independent child seed from (seed, stream), so one trial
  /// seed can fan out into separate streams (graph sampling, k-means, ...)
  /// without correlation. splitmix64 finalizer over seed + stream offset.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace repsc
