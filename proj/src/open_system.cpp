#include "maxplus/open_system.hpp"

#include <algorithm>

#include "maxplus/errors.hpp"
#include "maxplus/parallel.hpp"

namespace maxplus {

template <Backing T>
void require_fixed_structure(const MatrixDistribution<T>& law) {
  const std::vector<Matrix<T>>* matrices = nullptr;
  if (law.is_finite()) {
    matrices = &law.finite().matrices;
  } else {
    matrices = &law.generator().skeletons;
    if (matrices->empty()) throw InputError("open system: generator has no known structure");
  }
  const auto& first = matrices->front();
  for (std::size_t l = 1; l < matrices->size(); ++l) {
    for (std::size_t i = 0; i < first.dim(); ++i) {
      for (std::size_t j = 0; j < first.dim(); ++j) {
        if ((*matrices)[l](i, j).is_finite() != first(i, j).is_finite()) {
          throw InputError("open system: the model does not have a fixed structure (atom " +
                           std::to_string(l) + " differs at entry (" + std::to_string(i + 1) +
                           "," + std::to_string(j + 1) + "))");
        }
      }
    }
  }
}

template <Backing T>
OpenSystemReport open_system_analysis(const MatrixDistribution<T>& law, std::size_t horizon,
                                      std::size_t replications, std::uint64_t seed,
                                      unsigned threads) {
  if (horizon < 1) throw InputError("open system: horizon must be >= 1");
  if (replications < 1) throw InputError("open system: replications must be >= 1");
  require_fixed_structure(law);
  require_condition_one(law);

  const Matrix<T>& shape = law.is_finite() ? law.finite().matrices.front()
                                           : law.generator().skeletons.front();
  OpenSystemReport out;
  out.horizon = horizon;
  out.replications = replications;
  out.blocks = scc_decompose(structure_of(shape));
  const std::size_t blocks = out.blocks.count();

  for (std::size_t c = 0; c < blocks; ++c) {
    BlockEstimate est;
    est.nodes = out.blocks.components[c];
    if (out.blocks.cyclicity[c]) {
      est.lyapunov = lyapunov_estimate(restricted(law, est.nodes), horizon, replications,
                                       replication_seed(seed, c), threads);
    }
    out.estimates.push_back(std::move(est));
  }

  // Upstream closure over the condensation (topological order: arcs go from
  // lower to higher index).
  std::vector<std::vector<bool>> upstream(blocks, std::vector<bool>(blocks, false));
  for (std::size_t c = 0; c < blocks; ++c) upstream[c][c] = true;
  for (std::size_t c = 0; c < blocks; ++c) {
    for (const auto& [from, to] : out.blocks.condensation_arcs) {
      if (to != c) continue;
      for (std::size_t b = 0; b < blocks; ++b) {
        if (upstream[from][b]) upstream[c][b] = true;
      }
    }
  }
  std::vector<double> block_limit(blocks, 0.0);
  for (std::size_t c = 0; c < blocks; ++c) {
    std::optional<double> best;
    for (std::size_t b = 0; b < blocks; ++b) {
      if (!upstream[c][b] || !out.estimates[b].lyapunov) continue;
      const double v = out.estimates[b].lyapunov->estimate;
      if (!best || *best < v) best = v;
    }
    if (!best) throw ContractViolation("open system: a block has no upstream circuit");
    block_limit[c] = *best;
  }
  out.node_limits.resize(shape.dim());
  for (std::size_t i = 0; i < shape.dim(); ++i) {
    out.node_limits[i] = block_limit[out.blocks.component_of[i]];
  }

  // Diagnostic: x_i(h)/h of the whole system from 0.
  std::vector<std::vector<double>> per_rep(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    SamplePath<T> path(law, replication_seed(seed, r));
    Vector<T> x = Vector<T>::filled(shape.dim(), Scalar<T>::unit());
    for (std::size_t n = 0; n < horizon; ++n) x = mat_vec(path.next_forward(), x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      per_rep[r].push_back(to_double(x[i].value()) / static_cast<double>(horizon));
    }
  });
  out.measured.assign(shape.dim(), 0.0);
  for (const auto& rep : per_rep) {
    for (std::size_t i = 0; i < rep.size(); ++i) out.measured[i] += rep[i];
  }
  for (double& m : out.measured) m /= static_cast<double>(replications);

  if (blocks == 2 && out.blocks.condensation_arcs.size() == 1 && out.estimates[0].lyapunov &&
      out.estimates[1].lyapunov) {
    const auto& u = *out.estimates[0].lyapunov;
    const auto& a = *out.estimates[1].lyapunov;
    TwoBlockVerdict v;
    v.source = 0;
    v.sink = 1;
    v.u = u.estimate;
    v.a = a.estimate;
    if (a.ci_high < u.ci_low) {
      v.verdict = "unique stationary regime for differences";
    } else if (a.ci_low > u.ci_high) {
      v.verdict = "differences diverge";
    } else {
      v.verdict = "inconclusive";
    }
    out.two_block = v;
  }
  return out;
}

template void require_fixed_structure(const MatrixDistribution<Rational>&);
template void require_fixed_structure(const MatrixDistribution<double>&);
template OpenSystemReport open_system_analysis(const MatrixDistribution<Rational>&, std::size_t,
                                               std::size_t, std::uint64_t, unsigned);
template OpenSystemReport open_system_analysis(const MatrixDistribution<double>&, std::size_t,
                                               std::size_t, std::uint64_t, unsigned);

}  // namespace maxplus
