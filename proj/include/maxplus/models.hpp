#pragma once

// Builders for Cyclic Jackson Networks (k FIFO queues on the route
// 1 -> 2 -> ... -> k -> 1) and task graphs with random precedences.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/distribution.hpp"
#include "maxplus/simulation.hpp"

namespace maxplus {

/// x_j(n+1) = max(x_j(n), x_{j-1}(n)) + σ_j(n):  A(j,j) = A(j,j-1) = σ_j,
/// indices mod k.  Requires k ≥ 2.
template <Backing T>
Matrix<T> cjn_matrix(const std::vector<T>& sigma);

template <Backing T>
struct CjnSpec {
  std::size_t k = 0;
  std::size_t customers = 0;
  /// Joint law of (σ_1(n), ..., σ_k(n)) on finitely many atoms...
  std::vector<std::vector<T>> atoms;
  std::vector<T> probabilities;
  /// ...or independent per-queue laws (used when `atoms` is empty).
  std::vector<ScalarLaw<T>> queue_laws;
  /// Customers initially at each queue (each ≥ 1, summing to `customers`);
  /// empty: one per queue, extras at queue 1.
  std::vector<std::size_t> initial;
};

struct CjnLayout {
  std::size_t dim = 0;
  std::vector<std::size_t> physical;  // coordinate of each physical queue
};

/// Queue j with c_j initial customers is followed by c_j - 1 fictive queues
/// with σ ≡ e.
template <Backing T>
CjnLayout cjn_layout(const CjnSpec<T>& spec);

/// Finite support when the service law has finite support (identical
/// matrices merged), otherwise a generator.
template <Backing T>
MatrixDistribution<T> cjn_distribution(const CjnSpec<T>& spec);

struct CjnCondition {
  bool holds = false;
  std::optional<std::size_t> witness;  // atom index
  std::string clause;                  // "strict maximum" or "all equal"
};

/// Some atom has a strict unique maximum or all coordinates equal.
template <Backing T>
CjnCondition cjn_stability_condition(const std::vector<std::vector<T>>& atoms);

/// Idle times I_j(n) = x_j(n) - σ_j - x_j(n-1) and workloads
/// W_j(n) = x_j(n) - σ_j - x_{j-1}(n-1) at the recorded times n ≥ 1, for the
/// physical queues, σ_j being the service used on the step into n.
/// Workloads are only produced when customers = k.
template <Backing T>
struct CjnSecondOrder {
  std::vector<std::size_t> times;
  std::vector<std::vector<T>> idle;
  std::optional<std::vector<std::vector<T>>> workload;
};

template <Backing T>
CjnSecondOrder<T> cjn_second_order(const TrajectoryRecord<T>& record, const CjnLayout& layout);

template <Backing T>
struct SubsetLaw {
  std::vector<std::vector<std::size_t>> subsets;  // successor sets (0-based, ascending)
  std::vector<T> probabilities;
};

template <Backing T>
struct TaskGraphSpec {
  std::size_t k = 0;
  std::vector<SubsetLaw<T>> processors;  // P^i over L(i, n)
  ScalarLaw<T> duration = ScalarLaw<T>::constant(from_int<T>(1));
  /// Per-arc overrides: ((i, j), law of A_{ji}) for arcs i -> j.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, ScalarLaw<T>>> arc_durations;
};

/// A_{ji}(n) is finite iff j ∈ L(i, n).  Rejects specs where some row can be
/// all ε with positive probability, naming the processor.
template <Backing T>
MatrixDistribution<T> taskgraph_distribution(const TaskGraphSpec<T>& spec);

}  // namespace maxplus
