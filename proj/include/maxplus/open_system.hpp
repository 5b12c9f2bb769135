#pragma once

// First-order limits of reducible fixed-structure models: each strongly
// connected block is estimated in isolation and a node's limit is the max
// over the blocks upstream of it (itself included).  Two-block source → sink
// chains also get a verdict on the differences between the blocks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/distribution.hpp"
#include "maxplus/graphs.hpp"
#include "maxplus/simulation.hpp"

namespace maxplus {

struct BlockEstimate {
  std::vector<std::size_t> nodes;
  std::optional<LyapunovEstimate> lyapunov;  // absent for blocks without a circuit
};

struct TwoBlockVerdict {
  std::size_t source = 0;  // block indices
  std::size_t sink = 0;
  double u = 0.0;  // source exponent
  double a = 0.0;  // sink exponent
  /// "unique stationary regime for differences", "differences diverge" or
  /// "inconclusive".
  std::string verdict;
};

struct OpenSystemReport {
  SccDecomposition blocks;
  std::vector<BlockEstimate> estimates;        // per block
  std::vector<double> node_limits;             // per node
  std::vector<double> measured;                // mean of x_i(h)/h from 0, diagnostic only
  std::optional<TwoBlockVerdict> two_block;
  std::size_t horizon = 0;
  std::size_t replications = 0;
};

/// All support matrices (or generator cases) must share one ε-pattern.
template <Backing T>
void require_fixed_structure(const MatrixDistribution<T>& law);

template <Backing T>
OpenSystemReport open_system_analysis(const MatrixDistribution<T>& law, std::size_t horizon,
                                      std::size_t replications, std::uint64_t seed,
                                      unsigned threads = 1);

}  // namespace maxplus
