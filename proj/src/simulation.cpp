#include "maxplus/simulation.hpp"

#include <cmath>

#include "maxplus/errors.hpp"
#include "maxplus/parallel.hpp"

namespace maxplus {

namespace {

template <Backing T>
void require_row_finite(const Matrix<T>& m, const std::string& where) {
  if (const auto row = m.first_epsilon_row()) {
    throw InputError("condition I violated: row " + std::to_string(*row + 1) + " of " + where +
                     " is all epsilon");
  }
}

template <Backing T>
Vector<T> difference(const Vector<T>& a, const Vector<T>& b) {
  Vector<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = Scalar<T>(T(a[i].value() - b[i].value()));
  return out;
}

template <Backing T>
Vector<T> diagonal(const Matrix<T>& m) {
  Vector<T> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) out[i] = m(i, i);
  return out;
}

template <Backing T>
T max_coordinate(const Vector<T>& x) {
  T best = x[0].value();
  for (const auto& c : x) {
    if (best < c.value()) best = c.value();
  }
  return best;
}

}  // namespace

template <Backing T>
void require_condition_one(const MatrixDistribution<T>& law) {
  if (law.is_finite()) {
    const auto& f = law.finite();
    for (std::size_t l = 0; l < f.matrices.size(); ++l) {
      require_row_finite(f.matrices[l], "support matrix " + std::to_string(l));
    }
    return;
  }
  const auto& g = law.generator();
  for (std::size_t l = 0; l < g.skeletons.size(); ++l) {
    require_row_finite(g.skeletons[l], "generator case " + std::to_string(l));
  }
}

template <Backing T>
TrajectoryRecord<T> simulate(const MatrixDistribution<T>& law, const Vector<T>& x0,
                             std::size_t horizon, std::uint64_t seed, std::size_t thin) {
  detail::require_same_dim(law.dim(), x0.size(), "simulate");
  if (!x0.is_finite()) throw InputError("simulate: initial condition must be finite");
  if (thin == 0) throw InputError("simulate: thin must be >= 1");
  require_condition_one(law);

  TrajectoryRecord<T> rec;
  rec.seed = seed;
  rec.x0 = x0;
  rec.horizon = horizon;
  rec.thin = thin;
  rec.times.push_back(0);
  rec.states.push_back(x0);
  rec.projective.push_back(ProjVector<T>::canonical(x0));
  rec.increments.emplace_back();
  rec.diagonals.emplace_back();

  SamplePath<T> path(law, seed);
  Vector<T> x = x0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const Matrix<T>& a = path.next_forward();
    if (!law.is_finite()) require_row_finite(a, "A(" + std::to_string(n - 1) + ")");
    Vector<T> next = mat_vec(a, x);
    if (n % thin == 0 || n == horizon) {
      rec.times.push_back(n);
      rec.increments.push_back(difference(next, x));
      rec.diagonals.push_back(diagonal(a));
      rec.projective.push_back(ProjVector<T>::canonical(next));
      rec.states.push_back(next);
    }
    x = std::move(next);
  }
  return rec;
}

LyapunovEstimate summarize_replicates(std::vector<double> samples, std::size_t horizon) {
  LyapunovEstimate out;
  out.horizon = horizon;
  out.replications = samples.size();
  if (samples.empty()) throw InputError("lyapunov: at least one replication is needed");
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  double half = 0.0;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    half = 1.96 * sd / std::sqrt(static_cast<double>(samples.size()));
  }
  out.estimate = mean;
  out.ci_low = mean - half;
  out.ci_high = mean + half;
  out.samples = std::move(samples);
  return out;
}

template <Backing T>
LyapunovEstimate lyapunov_estimate(const MatrixDistribution<T>& law, std::size_t horizon,
                                   std::size_t replications, std::uint64_t seed,
                                   unsigned threads, const std::optional<Vector<T>>& x0) {
  if (horizon < 1) throw InputError("lyapunov: horizon must be >= 1");
  if (replications < 1) throw InputError("lyapunov: replications must be >= 1");
  const Vector<T> start = x0 ? *x0 : Vector<T>::filled(law.dim(), Scalar<T>::unit());
  detail::require_same_dim(law.dim(), start.size(), "lyapunov");
  if (!start.is_finite()) throw InputError("lyapunov: initial condition must be finite");
  require_condition_one(law);

  std::vector<double> samples(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    SamplePath<T> path(law, replication_seed(seed, r));
    Vector<T> x = start;
    for (std::size_t n = 0; n < horizon; ++n) {
      const Matrix<T>& a = path.next_forward();
      if (!law.is_finite()) require_row_finite(a, "A(" + std::to_string(n) + ")");
      x = mat_vec(a, x);
    }
    if constexpr (is_exact_v<T>) {
      samples[r] = to_double(Rational(max_coordinate(x) / Rational(static_cast<long>(horizon))));
    } else {
      samples[r] = max_coordinate(x) / static_cast<double>(horizon);
    }
  });
  return summarize_replicates(std::move(samples), horizon);
}

#define MAXPLUS_INSTANTIATE_SIMULATION(T)                                                     \
  template void require_condition_one(const MatrixDistribution<T>&);                          \
  template TrajectoryRecord<T> simulate(const MatrixDistribution<T>&, const Vector<T>&,       \
                                        std::size_t, std::uint64_t, std::size_t);             \
  template LyapunovEstimate lyapunov_estimate(const MatrixDistribution<T>&, std::size_t,      \
                                              std::size_t, std::uint64_t, unsigned,           \
                                              const std::optional<Vector<T>>&);

MAXPLUS_INSTANTIATE_SIMULATION(Rational)
MAXPLUS_INSTANTIATE_SIMULATION(double)

}  // namespace maxplus
