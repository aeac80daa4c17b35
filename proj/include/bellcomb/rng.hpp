#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "bellcomb/errors.hpp"

namespace bellcomb {

/// splitmix64 step; used both as a stream and to derive well-mixed child
/// seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for a (stream, index) pair, stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  std::uint64_t b = splitmix64(s);
  s = b ^ (index * 0xda942042e4dd58b5ULL + 1ULL);
  return splitmix64(s);
}

/// Deterministic RNG with platform-independent sampling helpers. The
/// standard <random> distributions are implementation-defined, which would
/// break byte-identical transcripts across toolchains, so sampling is done
/// from raw 64-bit outputs here.
class SplitMixRng {
 public:
  explicit SplitMixRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 32) & 1ULL; }

  /// Index into a probability vector by inverse-CDF walk. The final index is
  /// returned when round-off leaves the draw above the accumulated total.
  std::size_t sample_index(std::span<const double> probabilities) {
    if (probabilities.empty()) throw DegenerateDistribution("empty probability vector");
    const double u = next_unit();
    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < probabilities.size(); ++i) {
      cumulative += probabilities[i];
      if (u < cumulative) return i;
    }
    return probabilities.size() - 1;
  }

  /// +1 with probability p, else -1.
  int sample_pm(double p_plus) { return next_unit() < p_plus ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace bellcomb
