#pragma once

// Laws of the driving sequence {A(n)}: finite support (i.i.d. or finite-state
// Markov) and generators for continuous-support models.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "maxplus/rng.hpp"
#include "maxplus/semiring.hpp"

namespace maxplus {

/// Law of one real random variable.
template <Backing T>
struct ScalarLaw {
  enum class Kind { constant, discrete, uniform, exponential };

  Kind kind = Kind::constant;
  std::vector<T> values;         // constant: one value; discrete: support
  std::vector<T> probabilities;  // discrete only
  double low = 0.0;              // uniform
  double high = 0.0;
  double rate = 1.0;             // exponential

  static ScalarLaw constant(T value);
  static ScalarLaw discrete(std::vector<T> values, std::vector<T> probabilities);
  static ScalarLaw uniform(double low, double high);
  static ScalarLaw exponential(double rate);

  bool has_finite_support() const { return kind == Kind::constant || kind == Kind::discrete; }
  /// Continuous draws are converted exactly into the backing.
  T draw(Rng& rng) const;
};

/// Matrix whose entries are ε, constants or named random variables.  Each
/// draw picks a case with its probability, then draws every variable
/// independently.
template <Backing T>
struct MatrixTemplate {
  struct Entry {
    enum class Kind { epsilon, constant, variable };
    Kind kind = Kind::epsilon;
    T value{};
    std::size_t variable = 0;
  };
  struct Case {
    T probability;
    std::vector<Entry> entries;  // row-major, dim × dim
  };

  std::size_t dim = 0;
  std::vector<std::string> variable_names;
  std::vector<ScalarLaw<T>> variable_laws;
  std::vector<Case> cases;

  void validate() const;
  Matrix<T> draw(Rng& rng) const;
  /// One matrix per case with every variable replaced by e: the ε-patterns
  /// that occur with positive probability.
  std::vector<Matrix<T>> skeletons() const;
};

template <Backing T>
struct FiniteSupport {
  std::vector<Matrix<T>> matrices;
  std::vector<T> probabilities;
  /// Row-stochastic kernel over support indices; empty for i.i.d.
  std::vector<std::vector<T>> kernel;

  bool is_markov() const { return !kernel.empty(); }
};

template <Backing T>
struct Generator {
  std::size_t dim = 0;
  std::function<Matrix<T>(Rng&)> draw;
  /// ε-patterns with positive probability, when known.
  std::vector<Matrix<T>> skeletons;
  /// Serializable description, when the generator was built from one.
  std::optional<MatrixTemplate<T>> source;
};

template <Backing T>
class MatrixDistribution {
 public:
  static MatrixDistribution iid(std::vector<Matrix<T>> matrices, std::vector<T> probabilities);
  /// `probabilities` is the marginal law; the chain starts from the
  /// stationary law of `kernel` obtained by fixed-point iteration from it.
  static MatrixDistribution markov(std::vector<Matrix<T>> matrices, std::vector<T> probabilities,
                                   std::vector<std::vector<T>> kernel);
  static MatrixDistribution single(Matrix<T> matrix);
  static MatrixDistribution generator(Generator<T> generator);
  static MatrixDistribution from_template(MatrixTemplate<T> tmpl);

  std::size_t dim() const { return dim_; }
  bool is_finite() const { return std::holds_alternative<FiniteSupport<T>>(law_); }
  bool is_markov() const { return is_finite() && finite().is_markov(); }
  const FiniteSupport<T>& finite() const;
  const Generator<T>& generator() const;

  /// Marginal and kernel as doubles, for sampling.
  const std::vector<double>& marginal_weights() const { return marginal_; }
  const std::vector<std::vector<double>>& kernel_weights() const { return kernel_; }
  /// Stationary law used to start Markov chains (doubles, for sampling).
  const std::vector<double>& stationary() const { return stationary_; }
  /// Time-reversed kernel, used to extend the sequence to negative times.
  const std::vector<std::vector<double>>& reversed_kernel() const { return reversed_; }

  /// Probability of the word u_0 .. u_{N-1} (i.i.d.: product of marginals;
  /// Markov: marginal of u_0 times kernel transitions).
  T word_probability(const std::vector<std::size_t>& word) const;

 private:
  MatrixDistribution() = default;
  void prepare();

  std::size_t dim_ = 0;
  std::variant<FiniteSupport<T>, Generator<T>> law_;
  std::vector<double> marginal_;
  std::vector<std::vector<double>> kernel_;
  std::vector<double> stationary_;
  std::vector<std::vector<double>> reversed_;
  bool marginal_is_stationary_ = true;
};

/// One realisation of a stationary driving sequence, extended to negative
/// times: forward draws give A(0), A(1), ..., backward draws A(-1), A(-2), ...
/// Forward and backward halves use independent streams derived from the
/// seed; for Markov laws the backward half runs the time-reversed chain from
/// a stationary A(-1) and the forward half continues from A(-1).
template <Backing T>
class SamplePath {
 public:
  SamplePath(const MatrixDistribution<T>& law, std::uint64_t seed);

  const Matrix<T>& next_forward();
  const Matrix<T>& next_backward();
  /// Support index of the last draw (finite support only).
  std::optional<std::size_t> forward_atom() const { return forward_atom_; }
  std::optional<std::size_t> backward_atom() const { return backward_atom_; }

 private:
  const MatrixDistribution<T>* law_;
  Rng forward_;
  Rng backward_;
  std::optional<std::size_t> anchor_;  // A(-1) for Markov laws
  bool anchor_used_ = false;
  std::optional<std::size_t> forward_atom_;
  std::optional<std::size_t> backward_atom_;
  Matrix<T> forward_generated_;
  Matrix<T> backward_generated_;
};

/// The law of the sub-matrices on `nodes` (ascending), as used for a
/// strongly connected block in isolation.
template <Backing T>
MatrixDistribution<T> restricted(const MatrixDistribution<T>& law,
                                 const std::vector<std::size_t>& nodes);

template <Backing T>
Matrix<T> submatrix(const Matrix<T>& a, const std::vector<std::size_t>& nodes);

/// A(0), ..., A(n-1) of the path with this seed.
template <Backing T>
std::vector<Matrix<T>> sample_sequence(const MatrixDistribution<T>& law, std::uint64_t seed,
                                       std::size_t n);

/// Support indices of A(0), ..., A(n-1) (finite support only).
template <Backing T>
std::vector<std::size_t> sample_word(const MatrixDistribution<T>& law, std::uint64_t seed,
                                     std::size_t n);

}  // namespace maxplus
