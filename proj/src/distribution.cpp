#include "maxplus/distribution.hpp"

#include <cmath>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

template <Backing T>
bool sums_to_one(const std::vector<T>& p) {
  T total = from_int<T>(0);
  for (const auto& x : p) total += x;
  if constexpr (is_exact_v<T>) {
    return total == 1;
  } else {
    return std::abs(total - 1.0) <= 1e-12;
  }
}

template <Backing T>
void require_law(const std::vector<T>& p, const std::string& what) {
  if (p.empty()) throw InputError(what + ": empty probability vector");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(from_int<T>(0) < p[i])) {
      throw InputError(what + ": probability " + std::to_string(i) + " is not positive");
    }
  }
  if (!sums_to_one(p)) throw InputError(what + ": probabilities do not sum to 1");
}

template <Backing T>
std::vector<double> as_doubles(const std::vector<T>& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(to_double(x));
  return out;
}

// Lazy iteration π <- (π + πP)/2 converges for every finite chain started
// anywhere; the result is the stationary law reached from the start.
std::vector<double> stationary_from(std::vector<double> pi,
                                    const std::vector<std::vector<double>>& kernel) {
  const std::size_t n = pi.size();
  for (int iter = 0; iter < 1000000; ++iter) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * kernel[i][j];
    }
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = 0.5 * (next[j] + pi[j]);
      change = std::max(change, std::abs(next[j] - pi[j]));
    }
    pi = std::move(next);
    if (change < 1e-16) break;
  }
  double total = 0.0;
  for (double x : pi) total += x;
  for (double& x : pi) x /= total;
  return pi;
}

}  // namespace

// ---------------------------------------------------------------- ScalarLaw

template <Backing T>
ScalarLaw<T> ScalarLaw<T>::constant(T value) {
  ScalarLaw law;
  law.kind = Kind::constant;
  law.values = {std::move(value)};
  return law;
}

template <Backing T>
ScalarLaw<T> ScalarLaw<T>::discrete(std::vector<T> values, std::vector<T> probabilities) {
  if (values.size() != probabilities.size()) {
    throw InputError("discrete law: values and probabilities differ in length");
  }
  require_law(probabilities, "discrete law");
  ScalarLaw law;
  law.kind = Kind::discrete;
  law.values = std::move(values);
  law.probabilities = std::move(probabilities);
  return law;
}

template <Backing T>
ScalarLaw<T> ScalarLaw<T>::uniform(double low, double high) {
  if (!std::isfinite(low) || !std::isfinite(high) || !(low <= high)) {
    throw InputError("uniform law: need finite low <= high");
  }
  ScalarLaw law;
  law.kind = Kind::uniform;
  law.low = low;
  law.high = high;
  return law;
}

template <Backing T>
ScalarLaw<T> ScalarLaw<T>::exponential(double rate) {
  if (!std::isfinite(rate) || !(rate > 0.0)) throw InputError("exponential law: rate must be > 0");
  ScalarLaw law;
  law.kind = Kind::exponential;
  law.rate = rate;
  return law;
}

template <Backing T>
T ScalarLaw<T>::draw(Rng& rng) const {
  switch (kind) {
    case Kind::constant:
      return values.front();
    case Kind::discrete:
      return values[pick_index(as_doubles(probabilities), rng)];
    case Kind::uniform:
      return from_double<T>(low + (high - low) * uniform01(rng));
    case Kind::exponential:
      return from_double<T>(-std::log1p(-uniform01(rng)) / rate);
  }
  throw ContractViolation("unknown scalar law");
}

// ----------------------------------------------------------- MatrixTemplate

template <Backing T>
void MatrixTemplate<T>::validate() const {
  if (dim == 0) throw InputError("matrix template: dimension must be >= 1");
  if (variable_names.size() != variable_laws.size()) {
    throw InputError("matrix template: variable names and laws differ in length");
  }
  if (cases.empty()) throw InputError("matrix template: no cases");
  std::vector<T> p;
  for (const auto& c : cases) {
    if (c.entries.size() != dim * dim) {
      throw InputError("matrix template: a case does not have k*k entries");
    }
    for (const auto& e : c.entries) {
      if (e.kind == Entry::Kind::variable && e.variable >= variable_laws.size()) {
        throw InputError("matrix template: unknown variable index");
      }
    }
    p.push_back(c.probability);
  }
  require_law(p, "matrix template cases");
}

template <Backing T>
Matrix<T> MatrixTemplate<T>::draw(Rng& rng) const {
  std::size_t chosen = 0;
  if (cases.size() > 1) {
    std::vector<double> weights;
    for (const auto& c : cases) weights.push_back(to_double(c.probability));
    chosen = pick_index(weights, rng);
  }
  // Every variable is drawn each step so the stream position does not depend
  // on which case was chosen.
  std::vector<T> drawn;
  drawn.reserve(variable_laws.size());
  for (const auto& law : variable_laws) drawn.push_back(law.draw(rng));

  Matrix<T> out(dim);
  const auto& entries = cases[chosen].entries;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& e = entries[i * dim + j];
      switch (e.kind) {
        case Entry::Kind::epsilon:
          break;
        case Entry::Kind::constant:
          out(i, j) = Scalar<T>(e.value);
          break;
        case Entry::Kind::variable:
          out(i, j) = Scalar<T>(drawn[e.variable]);
          break;
      }
    }
  }
  return out;
}

template <Backing T>
std::vector<Matrix<T>> MatrixTemplate<T>::skeletons() const {
  std::vector<Matrix<T>> out;
  for (const auto& c : cases) {
    Matrix<T> m(dim);
    for (std::size_t i = 0; i < dim * dim; ++i) {
      if (c.entries[i].kind != Entry::Kind::epsilon) m(i / dim, i % dim) = Scalar<T>::unit();
    }
    out.push_back(std::move(m));
  }
  return out;
}

// ------------------------------------------------------- MatrixDistribution

template <Backing T>
MatrixDistribution<T> MatrixDistribution<T>::iid(std::vector<Matrix<T>> matrices,
                                                  std::vector<T> probabilities) {
  return markov(std::move(matrices), std::move(probabilities), {});
}

template <Backing T>
MatrixDistribution<T> MatrixDistribution<T>::markov(std::vector<Matrix<T>> matrices,
                                                     std::vector<T> probabilities,
                                                     std::vector<std::vector<T>> kernel) {
  if (matrices.empty()) throw InputError("distribution: empty support");
  if (matrices.size() != probabilities.size()) {
    throw InputError("distribution: support and probabilities differ in length");
  }
  for (const auto& m : matrices) {
    detail::require_same_dim(m.dim(), matrices.front().dim(), "distribution support");
  }
  require_law(probabilities, "distribution");
  if (!kernel.empty()) {
    if (kernel.size() != matrices.size()) {
      throw InputError("markov kernel: dimension differs from the support size");
    }
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      if (kernel[i].size() != matrices.size()) {
        throw InputError("markov kernel: row " + std::to_string(i) + " has the wrong length");
      }
      for (const auto& x : kernel[i]) {
        if (x < from_int<T>(0)) throw InputError("markov kernel: negative entry");
      }
      if (!sums_to_one(kernel[i])) {
        throw InputError("markov kernel: row " + std::to_string(i) + " does not sum to 1");
      }
    }
  }
  MatrixDistribution d;
  d.dim_ = matrices.front().dim();
  d.law_ = FiniteSupport<T>{std::move(matrices), std::move(probabilities), std::move(kernel)};
  d.prepare();
  return d;
}

template <Backing T>
MatrixDistribution<T> MatrixDistribution<T>::single(Matrix<T> matrix) {
  return iid({std::move(matrix)}, {from_int<T>(1)});
}

template <Backing T>
MatrixDistribution<T> MatrixDistribution<T>::generator(Generator<T> generator) {
  if (generator.dim == 0) throw InputError("generator: dimension must be >= 1");
  if (!generator.draw) throw InputError("generator: no draw function");
  MatrixDistribution d;
  d.dim_ = generator.dim;
  d.law_ = std::move(generator);
  return d;
}

template <Backing T>
MatrixDistribution<T> MatrixDistribution<T>::from_template(MatrixTemplate<T> tmpl) {
  tmpl.validate();
  Generator<T> g;
  g.dim = tmpl.dim;
  g.skeletons = tmpl.skeletons();
  g.source = tmpl;
  g.draw = [t = std::move(tmpl)](Rng& rng) { return t.draw(rng); };
  return generator(std::move(g));
}

template <Backing T>
const FiniteSupport<T>& MatrixDistribution<T>::finite() const {
  if (!is_finite()) throw InputError("operation needs a finite-support distribution");
  return std::get<FiniteSupport<T>>(law_);
}

template <Backing T>
const Generator<T>& MatrixDistribution<T>::generator() const {
  if (is_finite()) throw ContractViolation("distribution is not generator-backed");
  return std::get<Generator<T>>(law_);
}

template <Backing T>
void MatrixDistribution<T>::prepare() {
  const auto& f = std::get<FiniteSupport<T>>(law_);
  marginal_ = as_doubles(f.probabilities);
  if (!f.is_markov()) {
    stationary_ = marginal_;
    return;
  }
  for (const auto& row : f.kernel) kernel_.push_back(as_doubles(row));

  // Keep the supplied marginal when it is already stationary.
  const std::size_t n = marginal_.size();
  marginal_is_stationary_ = true;
  for (std::size_t j = 0; j < n && marginal_is_stationary_; ++j) {
    T mass = from_int<T>(0);
    for (std::size_t i = 0; i < n; ++i) mass += f.probabilities[i] * f.kernel[i][j];
    marginal_is_stationary_ = nearly_equal<T>(mass, f.probabilities[j], 1e-12);
  }
  stationary_ = marginal_is_stationary_ ? marginal_ : stationary_from(marginal_, kernel_);

  reversed_.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (stationary_[i] <= 0.0) {
      reversed_[i] = kernel_[i];  // never visited
      continue;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      reversed_[i][j] = stationary_[j] * kernel_[j][i] / stationary_[i];
      total += reversed_[i][j];
    }
    for (double& x : reversed_[i]) x /= total;
  }
}

template <Backing T>
T MatrixDistribution<T>::word_probability(const std::vector<std::size_t>& word) const {
  const auto& f = finite();
  if (word.empty()) return from_int<T>(1);
  for (auto u : word) {
    if (u >= f.matrices.size()) throw InputError("word: support index out of range");
  }
  T p = marginal_is_stationary_ ? f.probabilities[word.front()]
                                : from_double<T>(stationary_[word.front()]);
  for (std::size_t n = 1; n < word.size(); ++n) {
    p *= f.is_markov() ? f.kernel[word[n - 1]][word[n]] : f.probabilities[word[n]];
  }
  return p;
}

// --------------------------------------------------------------- SamplePath

template <Backing T>
SamplePath<T>::SamplePath(const MatrixDistribution<T>& law, std::uint64_t seed)
    : law_(&law),
      forward_(make_stream(seed, StreamPurpose::forward)),
      backward_(make_stream(seed, StreamPurpose::backward)) {
  if (law.is_markov()) anchor_ = pick_index(law.stationary(), backward_);
}

template <Backing T>
const Matrix<T>& SamplePath<T>::next_forward() {
  if (!law_->is_finite()) {
    forward_generated_ = law_->generator().draw(forward_);
    return forward_generated_;
  }
  const auto& f = law_->finite();
  if (f.is_markov()) {
    const std::size_t from = forward_atom_ ? *forward_atom_ : *anchor_;
    forward_atom_ = pick_index(law_->kernel_weights()[from], forward_);
  } else {
    forward_atom_ = pick_index(law_->marginal_weights(), forward_);
  }
  return f.matrices[*forward_atom_];
}

template <Backing T>
const Matrix<T>& SamplePath<T>::next_backward() {
  if (!law_->is_finite()) {
    backward_generated_ = law_->generator().draw(backward_);
    return backward_generated_;
  }
  const auto& f = law_->finite();
  if (f.is_markov()) {
    if (!anchor_used_) {
      anchor_used_ = true;
      backward_atom_ = anchor_;
    } else {
      backward_atom_ = pick_index(law_->reversed_kernel()[*backward_atom_], backward_);
    }
  } else {
    backward_atom_ = pick_index(law_->marginal_weights(), backward_);
  }
  return f.matrices[*backward_atom_];
}

// ------------------------------------------------------------------ helpers

template <Backing T>
Matrix<T> submatrix(const Matrix<T>& a, const std::vector<std::size_t>& nodes) {
  if (nodes.empty()) throw InputError("submatrix: empty node set");
  Matrix<T> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (nodes[i] >= a.dim() || nodes[j] >= a.dim()) {
        throw InputError("submatrix: node index out of range");
      }
      out(i, j) = a(nodes[i], nodes[j]);
    }
  }
  return out;
}

template <Backing T>
MatrixDistribution<T> restricted(const MatrixDistribution<T>& law,
                                 const std::vector<std::size_t>& nodes) {
  if (law.is_finite()) {
    const auto& f = law.finite();
    std::vector<Matrix<T>> sub;
    for (const auto& m : f.matrices) sub.push_back(submatrix(m, nodes));
    return MatrixDistribution<T>::markov(std::move(sub), f.probabilities, f.kernel);
  }
  const auto& g = law.generator();
  Generator<T> out;
  out.dim = nodes.size();
  for (const auto& s : g.skeletons) out.skeletons.push_back(submatrix(s, nodes));
  out.draw = [draw = g.draw, nodes](Rng& rng) { return submatrix(draw(rng), nodes); };
  return MatrixDistribution<T>::generator(std::move(out));
}

template <Backing T>
std::vector<Matrix<T>> sample_sequence(const MatrixDistribution<T>& law, std::uint64_t seed,
                                       std::size_t n) {
  SamplePath<T> path(law, seed);
  std::vector<Matrix<T>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(path.next_forward());
  return out;
}

template <Backing T>
std::vector<std::size_t> sample_word(const MatrixDistribution<T>& law, std::uint64_t seed,
                                     std::size_t n) {
  law.finite();
  SamplePath<T> path(law, seed);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    path.next_forward();
    out.push_back(*path.forward_atom());
  }
  return out;
}

#define MAXPLUS_INSTANTIATE_DISTRIBUTION(T)                                                   \
  template struct ScalarLaw<T>;                                                               \
  template struct MatrixTemplate<T>;                                                          \
  template class MatrixDistribution<T>;                                                       \
  template class SamplePath<T>;                                                               \
  template Matrix<T> submatrix(const Matrix<T>&, const std::vector<std::size_t>&);            \
  template MatrixDistribution<T> restricted(const MatrixDistribution<T>&,                     \
                                            const std::vector<std::size_t>&);                 \
  template std::vector<Matrix<T>> sample_sequence(const MatrixDistribution<T>&, std::uint64_t, \
                                                  std::size_t);                               \
  template std::vector<std::size_t> sample_word(const MatrixDistribution<T>&, std::uint64_t,   \
                                                std::size_t);

MAXPLUS_INSTANTIATE_DISTRIBUTION(Rational)
MAXPLUS_INSTANTIATE_DISTRIBUTION(double)

}  // namespace maxplus
