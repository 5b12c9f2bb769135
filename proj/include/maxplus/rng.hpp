#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace maxplus {

using Rng = std::mt19937_64;

enum class StreamPurpose : std::uint32_t {
  forward = 0,
  backward = 1,
  auxiliary = 2,
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of replication `index` under `master`; depends on nothing else, so
/// results do not depend on scheduling.
constexpr std::uint64_t replication_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_stream(std::uint64_t seed, StreamPurpose purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), 0x6d61u};
  return Rng(seq);
}

/// Uniform on [0, 1) with 53 random bits; every value is a multiple of
/// 2^-53, which keeps exact conversions small.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Index drawn from nonnegative weights summing to 1 (the last positive
/// weight absorbs rounding).
inline std::size_t pick_index(const std::vector<double>& weights, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace maxplus
