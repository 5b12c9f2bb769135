#include "maxplus/coupling.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "maxplus/errors.hpp"
#include "maxplus/parallel.hpp"
#include "maxplus/patterns.hpp"
#include "maxplus/simulation.hpp"

namespace maxplus {

namespace {

template <Backing T>
double spread(const std::vector<Vector<T>>& states) {
  double worst = 0.0;
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      worst = std::max(worst, to_double(proj_dist(states[a], states[b]).value()));
    }
  }
  return worst;
}

template <Backing T>
bool within(const std::vector<Vector<T>>& states, const T& eta) {
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      if (!proj_dist(states[a], states[b]).at_most(eta)) return false;
    }
  }
  return true;
}

template <Backing T>
bool all_parallel(const std::vector<Vector<T>>& states) {
  const auto first = ProjVector<T>::canonical(states.front());
  for (std::size_t a = 1; a < states.size(); ++a) {
    if (!(ProjVector<T>::canonical(states[a]) == first)) return false;
  }
  return true;
}

template <Backing T>
void require_condition_two(const MatrixDistribution<T>& law, const char* op) {
  if (!law.is_finite() && law.generator().skeletons.empty()) return;
  const auto cond = structural_conditions(law);
  if (!cond.condition_one) {
    throw InputError(std::string(op) + ": condition I fails (an all-epsilon row is possible)");
  }
  if (!cond.condition_two) {
    throw InputError(std::string(op) +
                     ": condition II fails (no admissible product is fully finite)");
  }
}

}  // namespace

template <Backing T>
PathCoupling couple_path(const MatrixDistribution<T>& law, const std::vector<Vector<T>>& initial,
                         const CouplingOptions& options, std::uint64_t path_seed) {
  if (initial.size() < 2) throw InputError("couple: at least two initial conditions are needed");
  for (const auto& x : initial) {
    detail::require_same_dim(law.dim(), x.size(), "couple");
    if (!x.is_finite()) throw InputError("couple: initial conditions must be finite");
  }
  for (std::size_t a = 0; a < initial.size(); ++a) {
    for (std::size_t b = a + 1; b < initial.size(); ++b) {
      if (nearly_equal(ProjVector<T>::canonical(initial[a]), ProjVector<T>::canonical(initial[b]),
                       default_tolerance<T>())) {
        throw InputError("couple: initial conditions " + std::to_string(a + 1) + " and " +
                         std::to_string(b + 1) + " are projectively equal");
      }
    }
  }
  if (options.strong && !is_exact_v<T>) {
    throw InputError("couple: strong coupling needs exact backing");
  }
  if (!(options.eta >= 0.0)) throw InputError("couple: eta must be >= 0");
  require_condition_one(law);

  const T eta = from_double<T>(options.eta);
  PathCoupling out;
  out.seed = path_seed;
  SamplePath<T> path(law, path_seed);
  std::vector<Vector<T>> states = initial;
  std::vector<Matrix<T>> drivers;
  std::optional<Matrix<T>> product;  // canonical A(n-1) ⊗ ... ⊗ A(0)

  if (within(states, eta)) out.eta_time = 0;
  for (std::size_t n = 1; n <= options.horizon; ++n) {
    const Matrix<T>& a = path.next_forward();
    if (options.strong && !out.strong_time) drivers.push_back(a);
    for (auto& x : states) x = mat_vec(a, x);

    if constexpr (is_exact_v<T>) {
      if (options.strong) {
        if (!out.merge_time && all_parallel(states)) out.merge_time = n;
        if (!out.strong_time) {
          product = canonical_matrix(product ? mat_mul(a, *product) : a);
          if (is_rank_one(*product)) {
            out.strong_time = n;
            // Shortest window ending at n with a rank-1 product.
            Matrix<T> window = drivers[n - 1];
            std::size_t start = n - 1;
            while (!is_rank_one(window)) {
              --start;
              window = canonical_matrix(mat_mul(window, drivers[start]));
            }
            out.window = RenovatingWindow{start, n - start};
          }
        }
        if (out.strong_time && !all_parallel(states)) {
          throw ContractViolation("couple: trajectories differ after the certified coupling time");
        }
      }
    }
    if (!out.eta_time && within(states, eta)) out.eta_time = n;
  }
  out.final_spread = spread(states);
  return out;
}

namespace {

std::vector<std::pair<std::size_t, double>> cdf_of(const std::vector<std::size_t>& times,
                                                   std::size_t total) {
  std::map<std::size_t, std::size_t> counts;
  for (auto t : times) ++counts[t];
  std::vector<std::pair<std::size_t, double>> out;
  std::size_t acc = 0;
  for (const auto& [t, c] : counts) {
    acc += c;
    out.emplace_back(t, static_cast<double>(acc) / static_cast<double>(total));
  }
  return out;
}

}  // namespace

template <Backing T>
CouplingReport forward_coupling(const MatrixDistribution<T>& law,
                                const std::vector<Vector<T>>& initial,
                                const CouplingOptions& options, std::uint64_t seed,
                                std::size_t replications, unsigned threads) {
  if (replications < 1) throw InputError("couple: replications must be >= 1");
  CouplingReport report;
  report.options = options;
  report.seed = seed;
  report.replications.resize(replications);
  // Validate once up front so errors are not raised from worker threads.
  couple_path(law, initial, CouplingOptions{0, options.eta, options.strong}, seed);
  parallel_for(replications, threads, [&](std::size_t r) {
    report.replications[r] = couple_path(law, initial, options, replication_seed(seed, r));
  });
  std::vector<std::size_t> strong;
  std::vector<std::size_t> eta;
  for (const auto& rep : report.replications) {
    if (rep.strong_time) strong.push_back(*rep.strong_time);
    if (rep.eta_time) eta.push_back(*rep.eta_time);
  }
  report.strong_count = strong.size();
  report.eta_count = eta.size();
  report.strong_cdf = cdf_of(strong, replications);
  report.eta_cdf = cdf_of(eta, replications);
  return report;
}

template <Backing T>
LoynesResult<T> backward_loynes(const MatrixDistribution<T>& law, const LoynesOptions& options,
                                std::uint64_t path_seed) {
  if (!(options.tolerance >= 0.0)) throw InputError("loynes: tolerance must be >= 0");
  const bool exact_stop = options.tolerance == 0.0;
  if (exact_stop && !is_exact_v<T>) {
    throw InputError("loynes: tolerance 0 (exact rank-1 stop) needs exact backing");
  }
  if (options.budget < 1) throw InputError("loynes: budget must be >= 1");
  require_condition_two(law, "loynes");

  const T tol = from_double<T>(options.tolerance);
  LoynesResult<T> out;
  SamplePath<T> path(law, path_seed);
  Matrix<T> p = canonical_matrix(path.next_backward());
  for (std::size_t n = 1;; ++n) {
    if (n > 1) p = canonical_matrix(mat_mul(p, path.next_backward()));
    if (!law.is_finite() && !p.is_row_finite()) {
      throw InputError("loynes: condition I violated by a generated matrix");
    }
    out.steps = n;
    out.achieved_diameter = proj_diameter(p);
    if (options.record_trace) {
      out.diameter_trace.push_back(out.achieved_diameter.is_infinite()
                                       ? std::numeric_limits<double>::infinity()
                                       : to_double(out.achieved_diameter.value()));
    }
    bool done = false;
    if constexpr (is_exact_v<T>) {
      if (exact_stop && is_rank_one(p)) {
        // every finite u gives the same class, whatever the ε columns
        out.achieved_diameter = ProjDistance<T>{from_int<T>(0)};
        done = true;
      }
    }
    if (!exact_stop && out.achieved_diameter.at_most(tol)) done = true;
    if (done || n >= options.budget) {
      out.converged = done;
      break;
    }
  }
  for (std::size_t j = 0; j < p.dim(); ++j) {
    const auto column = p.column(j);
    if (column.is_finite()) {
      out.z = ProjVector<T>::canonical(column);
      break;
    }
  }
  if (out.converged && !out.z) {
    throw ContractViolation("loynes: converged product has no finite column");
  }
  return out;
}

#define MAXPLUS_INSTANTIATE_COUPLING(T)                                                       \
  template PathCoupling couple_path(const MatrixDistribution<T>&, const std::vector<Vector<T>>&, \
                                    const CouplingOptions&, std::uint64_t);                   \
  template CouplingReport forward_coupling(const MatrixDistribution<T>&,                      \
                                           const std::vector<Vector<T>>&,                     \
                                           const CouplingOptions&, std::uint64_t, std::size_t, \
                                           unsigned);                                         \
  template LoynesResult<T> backward_loynes(const MatrixDistribution<T>&, const LoynesOptions&, \
                                           std::uint64_t);

MAXPLUS_INSTANTIATE_COUPLING(Rational)
MAXPLUS_INSTANTIATE_COUPLING(double)

}  // namespace maxplus
