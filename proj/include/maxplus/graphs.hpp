#pragma once

// Precedence graphs of max-plus matrices.
//
// Convention: the graph of A has an arc i -> j iff A(j, i) != ε, valued
// A(j, i).  Everything in this header reads that convention; walks of length
// n from j to i are summarised by (A^n)(i, j).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxplus/semiring.hpp"

namespace maxplus {

/// Unvalued directed graph on nodes 0..nodes-1.
struct Digraph {
  std::size_t nodes = 0;
  std::vector<std::vector<std::size_t>> successors;  // sorted ascending

  explicit Digraph(std::size_t n = 0) : nodes(n), successors(n) {}
  void add_arc(std::size_t from, std::size_t to);
  bool has_arc(std::size_t from, std::size_t to) const;
  std::size_t arc_count() const;
};

template <Backing T>
struct Arc {
  std::size_t from;
  std::size_t to;
  T weight;
};

template <Backing T>
struct PrecedenceGraph {
  Digraph topology;
  std::vector<Arc<T>> arcs;  // ordered by (from, to)
};

template <Backing T>
PrecedenceGraph<T> graph_of(const Matrix<T>& a);

/// Topology only (arc i -> j iff A(j, i) != ε).
template <Backing T>
Digraph structure_of(const Matrix<T>& a);

struct SccDecomposition {
  /// Topological order of the condensation, ties broken by least node id.
  /// Nodes inside a component are ascending.
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> component_of;
  /// Arcs between component indices, sorted and without duplicates.
  std::vector<std::pair<std::size_t, std::size_t>> condensation_arcs;
  /// gcd of circuit lengths per component; empty for a single node without
  /// a loop.
  std::vector<std::optional<std::size_t>> cyclicity;

  std::size_t count() const { return components.size(); }
};

SccDecomposition scc_decompose(const Digraph& g);

bool is_strongly_connected(const Digraph& g);

/// lcm over components of the gcd of circuit lengths.  Components without a
/// circuit (loopless singletons) do not contribute.  Throws InputError when
/// the graph has no circuit at all.
std::size_t graph_cyclicity(const Digraph& g);

template <Backing T>
bool is_irreducible(const Matrix<T>& a) {
  return is_strongly_connected(structure_of(a));
}

/// Irreducible with cyclicity 1: some power is fully finite.
template <Backing T>
bool is_aperiodic(const Matrix<T>& a) {
  const auto g = structure_of(a);
  return is_strongly_connected(g) && graph_cyclicity(g) == 1;
}

/// Graphviz rendering with 1-based node labels and arc valuations.
template <Backing T>
std::string to_dot(const PrecedenceGraph<T>& g, const std::string& name = "G");

}  // namespace maxplus
