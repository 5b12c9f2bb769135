#pragma once

// Pattern search over finite products of the support, and the structural
// conditions I (rows a.s. finite) and II (some admissible product is fully
// finite).

#include <cstddef>
#include <optional>
#include <vector>

#include "maxplus/distribution.hpp"

namespace maxplus {

enum class Saturation { saturated, truncated };

const char* to_string(Saturation s);

struct PatternFinding {
  std::vector<std::size_t> word;  // u_0 .. u_{N-1}; product A_{u_{N-1}} ⊗ ... ⊗ A_{u_0}
  Matrix<Rational> product;
  bool rank_one = false;
  bool scs1cyc1 = false;
  Rational probability;  // probability of the word (lower bound of the pattern's)
};

struct PatternReport {
  bool found = false;                     // a rank-1 pattern
  std::optional<PatternFinding> pattern;  // the rank-1 pattern, when found
  /// First product met that is scs1-cyc1 but not rank-1.
  std::optional<PatternFinding> scs1cyc1_only;
  Saturation saturation = Saturation::truncated;
  std::size_t explored = 0;   // distinct (class, state) pairs visited
  std::size_t max_length = 0; // longest word length examined
  /// Least projective diameter over the classes visited (absent if all are
  /// infinite).  With a saturated search this bounds D(P_n) from below.
  std::optional<Rational> min_diameter;
  bool asymptotic_only = false;
};

struct PatternOptions {
  std::size_t max_len = 12;
  std::size_t budget = 200000;  // distinct (class, state) pairs
};

/// Breadth-first search over admissible words (all words for i.i.d. laws,
/// kernel-positive words for Markov laws), merging words whose products are
/// projectively equal and whose continuation sets coincide.  Returns the
/// first word whose product is rank-1.  Saturated means the closure was
/// exhausted: no new pairs appear.
PatternReport pattern_search(const MatrixDistribution<Rational>& law,
                             const PatternOptions& options = {});

/// Least n ≥ 1 with A^n rank-1, up to `budget`.
std::optional<std::size_t> first_rank_one_power(const Matrix<Rational>& a, std::size_t budget);

struct StructuralConditions {
  bool condition_one = false;
  /// (support index, row) of the first all-ε row, when condition I fails.
  std::optional<std::pair<std::size_t, std::size_t>> starved;
  bool condition_two = false;
  std::vector<std::size_t> witness;  // word with a fully finite product
  bool saturated = true;             // false if the pattern budget was hit
  std::size_t explored = 0;
};

/// Only ε-patterns matter.  Generators are examined through their case
/// skeletons, drawn i.i.d.
template <Backing T>
StructuralConditions structural_conditions(const MatrixDistribution<T>& law,
                                           std::size_t budget = 1000000);

}  // namespace maxplus
