#pragma once

// Stability verdicts for x(n+1) = A(n) ⊗ x(n).
//
// Ladder: condition I and II first; then a positive-probability rank-1 (or,
// i.i.d., scs1-cyc1) pattern gives StableStrong; a saturated rational i.i.d.
// search without a rank-1 element gives UnstableCertified; backward
// diameters below η on enough seeds give StableWeak; otherwise Inconclusive.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/distribution.hpp"
#include "maxplus/patterns.hpp"

namespace maxplus {

enum class Verdict { stable_strong, stable_weak, unstable_certified, inconclusive };

/// "StableStrong", "StableWeak", "UnstableCertified", "Inconclusive".
const char* to_string(Verdict v);

struct WeakEvidence {
  double eta = 0.0;
  double required_fraction = 0.0;
  std::size_t reached = 0;
  std::vector<double> final_diameters;  // per seed, +inf when infinite
  std::vector<std::size_t> steps;
};

struct StabilityVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::string basis;  // th1 | th3 | th4 | conv | conv2 | conv3 | none
  std::string reason;
  StructuralConditions conditions;
  std::optional<PatternReport> patterns;
  std::optional<WeakEvidence> weak;
};

struct VerdictOptions {
  PatternOptions patterns;
  double eta = 1e-6;
  std::size_t seeds = 20;
  std::size_t backward_budget = 10000000;
  double required_fraction = 0.95;
  bool monte_carlo = true;
  unsigned threads = 1;
};

/// Seed s of the Monte Carlo stage uses the path seed replication_seed(seed, s).
template <Backing T>
StabilityVerdict stability_verdict(const MatrixDistribution<T>& law, const VerdictOptions& options,
                                   std::uint64_t seed);

/// Exact copy of a float finite-support law (probabilities renormalized).
MatrixDistribution<Rational> to_exact(const MatrixDistribution<double>& law);

}  // namespace maxplus
