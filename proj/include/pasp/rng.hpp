#pragma once

#include <cstdint>
#include <random>

namespace pasp {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Portable pseudo-random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the derived draws below are computed
/// here rather than by <random> distributions, whose algorithms differ
/// between standard libraries.
///
/// Streams: Rng::stream(seed, k) seeds the engine with
/// splitmix64(seed ^ splitmix64(k + 1)), so different purposes drawing from
/// the same user seed never share a sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pasp
