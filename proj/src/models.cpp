#include "maxplus/models.hpp"

#include <algorithm>
#include <map>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

template <Backing T>
bool same_matrix(const Matrix<T>& a, const Matrix<T>& b) {
  return nearly_equal(a, b, 0.0);
}

// Support with identical matrices merged (probabilities added), in order of
// first appearance.
template <Backing T>
void add_atom(std::vector<Matrix<T>>& matrices, std::vector<T>& probabilities, Matrix<T> m,
              const T& p) {
  for (std::size_t l = 0; l < matrices.size(); ++l) {
    if (same_matrix(matrices[l], m)) {
      probabilities[l] += p;
      return;
    }
  }
  matrices.push_back(std::move(m));
  probabilities.push_back(p);
}

// Calls visit(choice) for every element of the product of {0..sizes[i]-1},
// last coordinate fastest.
template <class Visit>
void for_each_choice(const std::vector<std::size_t>& sizes, Visit&& visit) {
  std::vector<std::size_t> choice(sizes.size(), 0);
  for (auto s : sizes) {
    if (s == 0) return;
  }
  for (;;) {
    visit(choice);
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (++choice[i] < sizes[i]) break;
      choice[i] = 0;
      if (i == 0) return;
    }
    if (sizes.empty()) return;
  }
}

template <Backing T>
std::vector<T> expand(const std::vector<T>& sigma, const CjnLayout& layout) {
  std::vector<T> out(layout.dim, from_int<T>(0));
  for (std::size_t q = 0; q < layout.physical.size(); ++q) out[layout.physical[q]] = sigma[q];
  return out;
}

std::size_t product_size(const std::vector<std::size_t>& sizes, const char* what) {
  std::size_t total = 1;
  for (auto s : sizes) {
    if (total > 100000 / std::max<std::size_t>(s, 1)) {
      throw InputError(std::string(what) + ": more than 100000 combinations to enumerate");
    }
    total *= s;
  }
  return total;
}

}  // namespace

template <Backing T>
Matrix<T> cjn_matrix(const std::vector<T>& sigma) {
  const std::size_t k = sigma.size();
  if (k < 2) throw InputError("cjn_matrix: need at least 2 queues");
  Matrix<T> a(k);
  for (std::size_t j = 0; j < k; ++j) {
    a(j, j) = Scalar<T>(sigma[j]);
    a(j, (j + k - 1) % k) = Scalar<T>(sigma[j]);
  }
  return a;
}

template <Backing T>
CjnLayout cjn_layout(const CjnSpec<T>& spec) {
  if (spec.k < 2) throw InputError("cjn: need at least 2 queues");
  if (spec.customers < spec.k) {
    throw InputError(
        "cjn: fewer customers than queues is not supported; such networks need a different "
        "max-plus representation");
  }
  std::vector<std::size_t> initial = spec.initial;
  if (initial.empty()) {
    initial.assign(spec.k, 1);
    initial[0] += spec.customers - spec.k;
  }
  if (initial.size() != spec.k) throw InputError("cjn: initial must list one count per queue");
  std::size_t total = 0;
  for (std::size_t q = 0; q < spec.k; ++q) {
    if (initial[q] < 1) {
      throw InputError("cjn: every queue must start with at least one customer");
    }
    total += initial[q];
  }
  if (total != spec.customers) throw InputError("cjn: initial counts do not sum to customers");

  CjnLayout layout;
  for (std::size_t q = 0; q < spec.k; ++q) {
    layout.physical.push_back(layout.dim);
    layout.dim += initial[q];
  }
  return layout;
}

template <Backing T>
MatrixDistribution<T> cjn_distribution(const CjnSpec<T>& spec) {
  const CjnLayout layout = cjn_layout(spec);
  std::vector<Matrix<T>> matrices;
  std::vector<T> probabilities;

  if (!spec.atoms.empty()) {
    if (spec.atoms.size() != spec.probabilities.size()) {
      throw InputError("cjn: atoms and probabilities differ in length");
    }
    for (std::size_t l = 0; l < spec.atoms.size(); ++l) {
      if (spec.atoms[l].size() != spec.k) {
        throw InputError("cjn: atom " + std::to_string(l) + " does not have k service times");
      }
      if (!(from_int<T>(0) < spec.probabilities[l])) {
        throw InputError("cjn: probability " + std::to_string(l) + " is not positive");
      }
      add_atom(matrices, probabilities, cjn_matrix(expand(spec.atoms[l], layout)),
               spec.probabilities[l]);
    }
    return MatrixDistribution<T>::iid(std::move(matrices), std::move(probabilities));
  }

  if (spec.queue_laws.size() != spec.k) {
    throw InputError("cjn: give either joint atoms or one service law per queue");
  }
  const bool finite = std::all_of(spec.queue_laws.begin(), spec.queue_laws.end(),
                                  [](const auto& law) { return law.has_finite_support(); });
  if (finite) {
    std::vector<std::size_t> sizes;
    for (const auto& law : spec.queue_laws) sizes.push_back(law.values.size());
    product_size(sizes, "cjn");
    for_each_choice(sizes, [&](const std::vector<std::size_t>& choice) {
      std::vector<T> sigma;
      T p = from_int<T>(1);
      for (std::size_t q = 0; q < spec.k; ++q) {
        const auto& law = spec.queue_laws[q];
        sigma.push_back(law.values[choice[q]]);
        if (law.kind == ScalarLaw<T>::Kind::discrete) p *= law.probabilities[choice[q]];
      }
      add_atom(matrices, probabilities, cjn_matrix(expand(sigma, layout)), p);
    });
    return MatrixDistribution<T>::iid(std::move(matrices), std::move(probabilities));
  }

  using Entry = typename MatrixTemplate<T>::Entry;
  MatrixTemplate<T> tmpl;
  tmpl.dim = layout.dim;
  tmpl.variable_laws = spec.queue_laws;
  for (std::size_t q = 0; q < spec.k; ++q) tmpl.variable_names.push_back("s" + std::to_string(q + 1));
  typename MatrixTemplate<T>::Case only{from_int<T>(1), std::vector<Entry>(layout.dim * layout.dim)};
  std::vector<std::optional<std::size_t>> queue_at(layout.dim);
  for (std::size_t q = 0; q < spec.k; ++q) queue_at[layout.physical[q]] = q;
  for (std::size_t j = 0; j < layout.dim; ++j) {
    Entry e;
    if (queue_at[j]) {
      e.kind = Entry::Kind::variable;
      e.variable = *queue_at[j];
    } else {
      e.kind = Entry::Kind::constant;
      e.value = from_int<T>(0);
    }
    only.entries[j * layout.dim + j] = e;
    only.entries[j * layout.dim + (j + layout.dim - 1) % layout.dim] = e;
  }
  tmpl.cases.push_back(std::move(only));
  return MatrixDistribution<T>::from_template(std::move(tmpl));
}

template <Backing T>
CjnCondition cjn_stability_condition(const std::vector<std::vector<T>>& atoms) {
  CjnCondition out;
  for (std::size_t l = 0; l < atoms.size(); ++l) {
    const auto& s = atoms[l];
    if (s.empty()) throw InputError("cjn condition: empty atom");
    const T top = *std::max_element(s.begin(), s.end());
    const auto at_top = static_cast<std::size_t>(std::count(s.begin(), s.end(), top));
    if (at_top == 1 || at_top == s.size()) {
      out.holds = true;
      out.witness = l;
      out.clause = at_top == s.size() ? "all equal" : "strict maximum";
      return out;
    }
  }
  return out;
}

template <Backing T>
CjnSecondOrder<T> cjn_second_order(const TrajectoryRecord<T>& record, const CjnLayout& layout) {
  if (record.x0.size() != layout.dim) {
    throw InputError("cjn second order: trajectory dimension differs from the layout");
  }
  CjnSecondOrder<T> out;
  const bool direct = layout.physical.size() == layout.dim;
  if (direct) out.workload.emplace();
  const std::size_t dim = layout.dim;
  for (std::size_t i = 1; i < record.times.size(); ++i) {
    const auto& x = record.states[i];
    const auto& z = record.increments[i];
    const auto& diag = record.diagonals[i];
    std::vector<T> idle;
    std::vector<T> work;
    for (auto p : layout.physical) {
      const T sigma = diag[p].value();
      idle.push_back(z[p].value() - sigma);
      if (direct) {
        const std::size_t prev = (p + dim - 1) % dim;
        const T before = x[prev].value() - z[prev].value();  // x_{j-1}(n-1)
        work.push_back(x[p].value() - sigma - before);
      }
    }
    out.times.push_back(record.times[i]);
    out.idle.push_back(std::move(idle));
    if (direct) out.workload->push_back(std::move(work));
  }
  return out;
}

template <Backing T>
MatrixDistribution<T> taskgraph_distribution(const TaskGraphSpec<T>& spec) {
  const std::size_t k = spec.k;
  if (k < 1) throw InputError("taskgraph: need at least one processor");
  if (spec.processors.size() != k) throw InputError("taskgraph: one subset law per processor");
  for (std::size_t i = 0; i < k; ++i) {
    const auto& law = spec.processors[i];
    if (law.subsets.empty() || law.subsets.size() != law.probabilities.size()) {
      throw InputError("taskgraph: processor " + std::to_string(i + 1) +
                       " has an empty or inconsistent subset law");
    }
    T total = from_int<T>(0);
    for (std::size_t s = 0; s < law.subsets.size(); ++s) {
      if (!(from_int<T>(0) < law.probabilities[s])) {
        throw InputError("taskgraph: processor " + std::to_string(i + 1) +
                         " has a non-positive subset probability");
      }
      total += law.probabilities[s];
      for (auto j : law.subsets[s]) {
        if (j >= k) throw InputError("taskgraph: successor out of range");
      }
    }
    if (!nearly_equal<T>(total, from_int<T>(1), 1e-12)) {
      throw InputError("taskgraph: subset probabilities of processor " + std::to_string(i + 1) +
                       " do not sum to 1");
    }
  }
  // Row j is a.s. finite iff some processor has j in every one of its subsets.
  for (std::size_t j = 0; j < k; ++j) {
    bool fed = false;
    for (std::size_t i = 0; i < k && !fed; ++i) {
      const auto& subsets = spec.processors[i].subsets;
      fed = std::all_of(subsets.begin(), subsets.end(), [j](const auto& s) {
        return std::find(s.begin(), s.end(), j) != s.end();
      });
    }
    if (!fed) {
      throw InputError("taskgraph: processor " + std::to_string(j + 1) +
                       " can be left without any predecessor (condition I)");
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, ScalarLaw<T>> laws;  // (i, j) -> law of A_{ji}
  for (const auto& [arc, law] : spec.arc_durations) {
    if (arc.first >= k || arc.second >= k) throw InputError("taskgraph: arc out of range");
    laws[arc] = law;
  }
  auto law_of = [&](std::size_t i, std::size_t j) -> const ScalarLaw<T>& {
    const auto it = laws.find({i, j});
    return it == laws.end() ? spec.duration : it->second;
  };
  bool constant = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& s : spec.processors[i].subsets) {
      for (auto j : s) constant = constant && law_of(i, j).kind == ScalarLaw<T>::Kind::constant;
    }
  }

  std::vector<std::size_t> sizes;
  for (const auto& p : spec.processors) sizes.push_back(p.subsets.size());
  product_size(sizes, "taskgraph");

  if (constant) {
    std::vector<Matrix<T>> matrices;
    std::vector<T> probabilities;
    for_each_choice(sizes, [&](const std::vector<std::size_t>& choice) {
      Matrix<T> m(k);
      T p = from_int<T>(1);
      for (std::size_t i = 0; i < k; ++i) {
        const auto& law = spec.processors[i];
        p *= law.probabilities[choice[i]];
        for (auto j : law.subsets[choice[i]]) m(j, i) = Scalar<T>(law_of(i, j).values.front());
      }
      add_atom(matrices, probabilities, std::move(m), p);
    });
    return MatrixDistribution<T>::iid(std::move(matrices), std::move(probabilities));
  }

  using Entry = typename MatrixTemplate<T>::Entry;
  MatrixTemplate<T> tmpl;
  tmpl.dim = k;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> variable_of;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& s : spec.processors[i].subsets) {
      for (auto j : s) {
        if (variable_of.count({i, j})) continue;
        variable_of[{i, j}] = tmpl.variable_laws.size();
        tmpl.variable_names.push_back("d" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
        tmpl.variable_laws.push_back(law_of(i, j));
      }
    }
  }
  for_each_choice(sizes, [&](const std::vector<std::size_t>& choice) {
    typename MatrixTemplate<T>::Case c{from_int<T>(1), std::vector<Entry>(k * k)};
    for (std::size_t i = 0; i < k; ++i) {
      const auto& law = spec.processors[i];
      c.probability *= law.probabilities[choice[i]];
      for (auto j : law.subsets[choice[i]]) {
        Entry e;
        e.kind = Entry::Kind::variable;
        e.variable = variable_of.at({i, j});
        c.entries[j * k + i] = e;
      }
    }
    tmpl.cases.push_back(std::move(c));
  });
  return MatrixDistribution<T>::from_template(std::move(tmpl));
}

#define MAXPLUS_INSTANTIATE_MODELS(T)                                                         \
  template Matrix<T> cjn_matrix(const std::vector<T>&);                                       \
  template CjnLayout cjn_layout(const CjnSpec<T>&);                                           \
  template MatrixDistribution<T> cjn_distribution(const CjnSpec<T>&);                         \
  template CjnCondition cjn_stability_condition(const std::vector<std::vector<T>>&);          \
  template CjnSecondOrder<T> cjn_second_order(const TrajectoryRecord<T>&, const CjnLayout&);  \
  template MatrixDistribution<T> taskgraph_distribution(const TaskGraphSpec<T>&);

MAXPLUS_INSTANTIATE_MODELS(Rational)
MAXPLUS_INSTANTIATE_MODELS(double)

}  // namespace maxplus
