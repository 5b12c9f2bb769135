#pragma once

// Trajectories of x(n+1) = A(n) ⊗ x(n) and first-order (Lyapunov) estimates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxplus/distribution.hpp"
#include "maxplus/projective.hpp"

namespace maxplus {

/// Rejects laws with a row that can be all ε (condition I), naming the atom
/// and row.  Generators are checked through their skeletons.
template <Backing T>
void require_condition_one(const MatrixDistribution<T>& law);

template <Backing T>
struct TrajectoryRecord {
  std::uint64_t seed = 0;
  Vector<T> x0;
  std::size_t horizon = 0;
  std::size_t thin = 1;
  std::vector<std::size_t> times;        // 0, thin, 2·thin, ..., horizon
  std::vector<Vector<T>> states;         // x(times[i])
  std::vector<ProjVector<T>> projective; // π(x(times[i]))
  /// For i ≥ 1: z(n) = x(n) - x(n-1) and the diagonal of A(n-1), n = times[i].
  /// Index 0 is left empty.
  std::vector<Vector<T>> increments;
  std::vector<Vector<T>> diagonals;
};

/// Runs one path from x0.  `thin` keeps every thin-th state (the final state
/// is always kept).
template <Backing T>
TrajectoryRecord<T> simulate(const MatrixDistribution<T>& law, const Vector<T>& x0,
                             std::size_t horizon, std::uint64_t seed, std::size_t thin = 1);

struct LyapunovEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t horizon = 0;
  std::size_t replications = 0;
  std::vector<double> samples;  // per replication, by index
};

/// Mean over replications of max_i x_i(horizon) / horizon, with a 95%
/// normal-approximation interval.  Replication r uses the path seed
/// replication_seed(seed, r); x0 defaults to the zero vector.
template <Backing T>
LyapunovEstimate lyapunov_estimate(const MatrixDistribution<T>& law, std::size_t horizon,
                                   std::size_t replications, std::uint64_t seed,
                                   unsigned threads = 1,
                                   const std::optional<Vector<T>>& x0 = std::nullopt);

/// Summary of independent replicate values: mean and 1.96·s/√n half-width
/// (0 for a single replicate).
LyapunovEstimate summarize_replicates(std::vector<double> samples, std::size_t horizon);

}  // namespace maxplus
