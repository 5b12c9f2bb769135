#pragma once

// Forward coupling of trajectories driven by one sample path, and the Loynes
// backward scheme P_n = A(-1) ⊗ ... ⊗ A(-n).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxplus/distribution.hpp"
#include "maxplus/projective.hpp"

namespace maxplus {

/// Window [start, start + length) of the driving sequence whose product
/// A(start+length-1) ⊗ ... ⊗ A(start) is exactly rank-1.
struct RenovatingWindow {
  std::size_t start = 0;
  std::size_t length = 0;
};

struct PathCoupling {
  std::uint64_t seed = 0;
  /// First n with A(n-1) ⊗ ... ⊗ A(0) rank-1: from n on every finite initial
  /// condition gives the same projective state (exact backing only).
  std::optional<std::size_t> strong_time;
  std::optional<RenovatingWindow> window;
  /// First n at which the supplied trajectories agree projectively (exact
  /// backing only); never later than strong_time.
  std::optional<std::size_t> merge_time;
  /// First n with all pairwise projective distances ≤ η.
  std::optional<std::size_t> eta_time;
  /// Largest pairwise projective distance at the horizon.
  double final_spread = 0.0;
};

struct CouplingOptions {
  std::size_t horizon = 1000;
  double eta = 1e-6;
  bool strong = true;  // exact backing only
};

/// All trajectories from `initial` driven by the path with seed `path_seed`.
template <Backing T>
PathCoupling couple_path(const MatrixDistribution<T>& law, const std::vector<Vector<T>>& initial,
                         const CouplingOptions& options, std::uint64_t path_seed);

struct CouplingReport {
  CouplingOptions options;
  std::uint64_t seed = 0;
  std::vector<PathCoupling> replications;  // by index; path seed replication_seed(seed, r)
  std::size_t strong_count = 0;
  std::size_t eta_count = 0;
  /// (t, fraction of replications strongly coupled by time t) at every
  /// distinct coupling time; same for η-coupling.
  std::vector<std::pair<std::size_t, double>> strong_cdf;
  std::vector<std::pair<std::size_t, double>> eta_cdf;
};

template <Backing T>
CouplingReport forward_coupling(const MatrixDistribution<T>& law,
                                const std::vector<Vector<T>>& initial,
                                const CouplingOptions& options, std::uint64_t seed,
                                std::size_t replications, unsigned threads = 1);

template <Backing T>
struct LoynesResult {
  bool converged = false;
  std::size_t steps = 0;
  ProjDistance<T> achieved_diameter = ProjDistance<T>::infinite();
  /// Canonical class of the first column of P_n; absent while P_n has ε
  /// entries.
  std::optional<ProjVector<T>> z;
  /// D(P_n) for n = 1..steps (as doubles, +inf when infinite), if requested.
  std::vector<double> diameter_trace;
};

struct LoynesOptions {
  double tolerance = 0.0;  // 0: stop at an exactly rank-1 product (exact backing only)
  std::size_t budget = 10000000;
  bool record_trace = false;
};

/// Iterates P_n = P_{n-1} ⊗ A(-n) on the path with seed `path_seed` until
/// D(P_n) ≤ tolerance or the budget is spent.  Condition II is checked
/// first; failure is an input error.
template <Backing T>
LoynesResult<T> backward_loynes(const MatrixDistribution<T>& law, const LoynesOptions& options,
                                std::uint64_t path_seed);

}  // namespace maxplus
