#pragma once

// Spectral theory of irreducible max-plus matrices: eigenvalue (maximal
// circuit mean), A⁺, critical graph, cyclicity and transient, eigenvectors,
// scs1-cyc1 classification, span membership and weak rank.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "maxplus/graphs.hpp"
#include "maxplus/projective.hpp"
#include "maxplus/semiring.hpp"

namespace maxplus {

/// Maximal circuit mean over the whole graph of `a` (reducible allowed);
/// ε when the graph has no circuit.  Karp's recurrence on every strongly
/// connected component.
template <Backing T>
Scalar<T> max_cycle_mean(const Matrix<T>& a);

/// The unique eigenvalue of an irreducible matrix.  Rejects reducible input.
template <Backing T>
T eigenvalue(const Matrix<T>& a);

/// A with the eigenvalue subtracted from every finite entry.
template <Backing T>
Matrix<T> normalize(const Matrix<T>& a);

/// A ⊕ A² ⊕ ... ⊕ A^k for a normalized matrix (maximal circuit mean e).
/// Checks the fixpoint A⁺ ⊕ A^{k+1} = A⁺.
template <Backing T>
Matrix<T> a_plus(const Matrix<T>& normalized, double tol = default_tolerance<T>());

struct CriticalGraph {
  std::vector<std::size_t> nodes;                           // ascending
  std::vector<std::pair<std::size_t, std::size_t>> arcs;    // (from, to), sorted
  Digraph graph;                                            // all k nodes, critical arcs only
  std::vector<std::vector<std::size_t>> components;         // critical s.c.s., ordered

  std::size_t scc_count() const { return components.size(); }
};

/// Node i is critical iff Ā⁺(i,i) = e; arc i -> j is critical iff
/// Ā(j,i) ⊗ Ā⁺(i,j) = e, i.e. the arc closes a circuit of mean λ.
template <Backing T>
CriticalGraph critical_graph(const Matrix<T>& a, double tol = default_tolerance<T>());

/// Cyclicity of the critical graph.
template <Backing T>
std::size_t cyclicity(const Matrix<T>& a, double tol = default_tolerance<T>());

struct CyclicityTransient {
  std::size_t cyclicity;  // d
  std::size_t transient;  // M ≥ 1
};

/// Default power budget: 10·k² + 64.
std::size_t default_power_budget(std::size_t dim);

/// d = cyclicity of the critical graph and the least M ≥ 1 with
/// A^{M+d} = λ^{⊗d} ⊗ A^M.  Exact backing only.  Throws BudgetExhausted if
/// no repetition is seen with powers up to `max_power` (0 = default budget).
CyclicityTransient cyclicity_and_transient(const Matrix<Rational>& a, std::size_t max_power = 0);

/// One canonical critical column of Ā⁺ per critical s.c.s. (least node id as
/// representative).  Each returned vector v satisfies A ⊗ v = λ ⊗ v.
template <Backing T>
std::vector<ProjVector<T>> eigenbasis(const Matrix<T>& a, double tol = default_tolerance<T>());

template <Backing T>
struct SpectralSummary {
  T eigenvalue;
  CriticalGraph critical;
  std::size_t cyclicity = 1;
  std::optional<std::size_t> transient;
  bool scs1cyc1 = false;
  std::vector<std::size_t> eigenbasis_nodes;
  std::vector<ProjVector<T>> eigenbasis;
};

/// Full classification of an irreducible matrix.  The transient is computed
/// only on request and only for exact backing.
template <Backing T>
SpectralSummary<T> classify(const Matrix<T>& a, bool with_transient = false,
                            std::size_t max_power = 0);

/// Principal (greatest) sub-solution α of C ⊗ α ≤ b via residuation,
/// returned iff C ⊗ α = b.  `columns` are the columns of C.
template <Backing T>
std::optional<Vector<T>> span_membership(const std::vector<Vector<T>>& columns,
                                         const Vector<T>& b,
                                         double tol = default_tolerance<T>());

/// Number of columns left after eliminating, in ascending order, every
/// column lying in the span of the other remaining columns.
template <Backing T>
std::size_t weak_rank(const Matrix<T>& a, double tol = default_tolerance<T>());

}  // namespace maxplus
