#include "maxplus/verdict.hpp"

#include <limits>

#include "maxplus/coupling.hpp"
#include "maxplus/errors.hpp"
#include "maxplus/parallel.hpp"

namespace maxplus {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable_strong:
      return "StableStrong";
    case Verdict::stable_weak:
      return "StableWeak";
    case Verdict::unstable_certified:
      return "UnstableCertified";
    case Verdict::inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

MatrixDistribution<Rational> to_exact(const MatrixDistribution<double>& law) {
  const auto& f = law.finite();
  auto normalized = [](const std::vector<double>& p) {
    std::vector<Rational> out;
    Rational total = 0;
    for (double x : p) {
      out.push_back(from_double<Rational>(x));
      total += out.back();
    }
    if (total == 0) return out;
    for (auto& x : out) x /= total;
    return out;
  };
  std::vector<Matrix<Rational>> matrices;
  for (const auto& m : f.matrices) {
    Matrix<Rational> e(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j) {
        if (m(i, j).is_finite()) e(i, j) = Scalar<Rational>(from_double<Rational>(m(i, j).value()));
      }
    }
    matrices.push_back(std::move(e));
  }
  std::vector<std::vector<Rational>> kernel;
  for (const auto& row : f.kernel) kernel.push_back(normalized(row));
  return MatrixDistribution<Rational>::markov(std::move(matrices), normalized(f.probabilities),
                                               std::move(kernel));
}

template <Backing T>
StabilityVerdict stability_verdict(const MatrixDistribution<T>& law, const VerdictOptions& options,
                                   std::uint64_t seed) {
  StabilityVerdict out;
  out.basis = "none";

  const bool known_patterns = law.is_finite() || !law.generator().skeletons.empty();
  if (known_patterns) {
    out.conditions = structural_conditions(law);
    if (!out.conditions.condition_one) {
      out.reason = "condition I fails: a row can be all epsilon";
      return out;
    }
    if (!out.conditions.condition_two) {
      out.reason = out.conditions.saturated
                       ? "condition II fails; see open-system analysis"
                       : "condition II undecided within the search budget";
      return out;
    }
  }

  const bool iid = law.is_finite() && !law.is_markov();
  if (law.is_finite()) {
    PatternReport report;
    if constexpr (is_exact_v<T>) {
      report = pattern_search(law, options.patterns);
    } else {
      report = pattern_search(to_exact(law), options.patterns);
    }
    out.patterns = report;
    if (report.found) {
      out.verdict = Verdict::stable_strong;
      out.basis = "th4";
      out.reason = "positive-probability rank-1 pattern";
      return out;
    }
    if (iid && report.scs1cyc1_only) {
      out.verdict = Verdict::stable_strong;
      out.basis = "th1";
      out.reason = "scs1-cyc1 pattern of an i.i.d. sequence";
      return out;
    }
    if (report.saturation == Saturation::saturated) {
      if (iid && is_exact_v<T>) {
        out.verdict = Verdict::unstable_certified;
        out.basis = "conv";
        out.reason = "projective semigroup saturated without a rank-1 element";
        return out;
      }
      if (!report.min_diameter || from_double<Rational>(options.eta) < *report.min_diameter) {
        out.basis = "conv2";
        out.reason =
            "no positive-probability rank-1 pattern; every admissible product has diameter above "
            "eta";
        return out;
      }
    }
  }

  if (options.monte_carlo && options.seeds > 0) {
    WeakEvidence weak;
    weak.eta = options.eta;
    weak.required_fraction = options.required_fraction;
    weak.final_diameters.resize(options.seeds);
    weak.steps.resize(options.seeds);
    std::vector<char> reached(options.seeds, 0);
    LoynesOptions lo;
    lo.tolerance = options.eta;
    lo.budget = options.backward_budget;
    parallel_for(options.seeds, options.threads, [&](std::size_t s) {
      const auto r = backward_loynes(law, lo, replication_seed(seed, s));
      reached[s] = r.converged ? 1 : 0;
      weak.steps[s] = r.steps;
      weak.final_diameters[s] = r.achieved_diameter.is_infinite()
                                    ? std::numeric_limits<double>::infinity()
                                    : to_double(r.achieved_diameter.value());
    });
    for (char c : reached) weak.reached += static_cast<std::size_t>(c);
    const bool enough = static_cast<double>(weak.reached) >=
                        options.required_fraction * static_cast<double>(options.seeds);
    out.weak = weak;
    if (enough) {
      out.verdict = Verdict::stable_weak;
      out.basis = "conv3";
      out.reason = "backward diameters fell below eta on " + std::to_string(weak.reached) + "/" +
                   std::to_string(options.seeds) + " seeds (evidence, not proof)";
      return out;
    }
  }

  if (law.is_finite()) {
    out.basis = "conv2";
    out.reason = out.patterns->saturation == Saturation::saturated
                     ? "no positive-probability rank-1 pattern (saturated search)"
                     : "no rank-1 pattern within the search limits";
  } else {
    out.reason = "no asymptotic pattern evidence within the backward budget";
  }
  return out;
}

template StabilityVerdict stability_verdict(const MatrixDistribution<Rational>&,
                                            const VerdictOptions&, std::uint64_t);
template StabilityVerdict stability_verdict(const MatrixDistribution<double>&,
                                            const VerdictOptions&, std::uint64_t);

}  // namespace maxplus
