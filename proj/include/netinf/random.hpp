#pragma once

#include <cstdint>
#include <random>

namespace netinf {

// Reproducible randomness.
//
// Generator "netinf-rng/1": std::mt19937_64 (its output sequence is fixed by
// the C++ standard) seeded with a single 64-bit word. Distributions are
// implemented here rather than taken from <random>, whose distribution
// algorithms are implementation-defined and differ between standard libraries.
//
// Streams: independent sub-streams are addressed by derive_seed(seed, stream),
// which mixes both words through the SplitMix64 finalizer. Keyed draws
// (keyed_uniform) are counter-based and need no generator state at all.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform [0, 1) draw addressed by (key, counter); the same pair always yields
/// the same value.
constexpr double keyed_uniform(std::uint64_t key, std::uint64_t counter) noexcept {
  return to_unit_interval(derive_seed(key, counter));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() { return to_unit_interval(engine_()); }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Strictly positive exponential draw with the given mean.
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF exponential transform of a uniform in [0, 1); returns 0 only for u == 0.
double exponential_from_uniform(double u, double mean);

}  // namespace netinf
