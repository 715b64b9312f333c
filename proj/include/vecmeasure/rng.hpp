#pragma once

#include <cstdint>
#include <random>

namespace vecmeasure {

/// Reproducible random source for the verification suites.
///
/// Algorithm identity: the engine is MT19937-64 (std::mt19937_64, whose output
/// sequence is fixed by the C++ standard). Each trial gets its own stream
/// seeded with splitmix64(seed ^ splitmix64(trial)), so results do not depend
/// on how trials are scheduled across threads. Real-valued draws use the top
/// 53 bits of one engine output; no std::*_distribution is used because their
/// outputs are implementation-defined.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+splitmix64-stream/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
    return Rng(splitmix64(seed ^ splitmix64(trial)));
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] (inclusive). Modulo bias is irrelevant at
  /// the ranges used here.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  bool coin(double p_true = 0.5) { return uniform() < p_true; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vecmeasure
