#include "maxplus/spectral.hpp"

#include <algorithm>
#include <deque>

namespace maxplus {

namespace {

// Karp: with walks of exactly n arcs from a fixed source, the maximal circuit
// mean of a strongly connected component is
//   max_v min_{n<m} (D_m(v) - D_n(v)) / (m - n).
template <Backing T>
T karp_component(const Matrix<T>& a, const std::vector<std::size_t>& members) {
  const std::size_t m = members.size();
  std::vector<std::vector<std::optional<T>>> walk(m + 1, std::vector<std::optional<T>>(m));
  walk[0][0] = from_int<T>(0);
  for (std::size_t n = 1; n <= m; ++n) {
    for (std::size_t v = 0; v < m; ++v) {
      std::optional<T> best;
      for (std::size_t u = 0; u < m; ++u) {
        const auto& w = a(members[v], members[u]);  // arc u -> v
        if (w.is_epsilon() || !walk[n - 1][u]) continue;
        T cand = *walk[n - 1][u] + w.value();
        if (!best || *best < cand) best = std::move(cand);
      }
      walk[n][v] = std::move(best);
    }
  }
  std::optional<T> lambda;
  for (std::size_t v = 0; v < m; ++v) {
    if (!walk[m][v]) continue;
    std::optional<T> worst;
    for (std::size_t n = 0; n < m; ++n) {
      if (!walk[n][v]) continue;
      T mean = (*walk[m][v] - *walk[n][v]) / from_int<T>(static_cast<long>(m - n));
      if (!worst || mean < *worst) worst = std::move(mean);
    }
    if (worst && (!lambda || *lambda < *worst)) lambda = std::move(worst);
  }
  if (!lambda) throw ContractViolation("Karp recurrence found no circuit in a cyclic component");
  return *lambda;
}

template <Backing T>
void require_irreducible(const Matrix<T>& a, const char* op) {
  if (!is_irreducible(a)) {
    throw InputError(std::string(op) +
                     ": matrix is reducible; use the open-system analysis instead");
  }
}

bool is_unit(const auto& s, double tol) {
  using T = std::decay_t<decltype(s.value())>;
  return s.is_finite() && nearly_equal<T>(s.value(), from_int<T>(0), tol);
}

}  // namespace

template <Backing T>
Scalar<T> max_cycle_mean(const Matrix<T>& a) {
  const auto scc = scc_decompose(structure_of(a));
  Scalar<T> best;
  for (std::size_t c = 0; c < scc.count(); ++c) {
    if (!scc.cyclicity[c]) continue;
    best = oplus(best, Scalar<T>(karp_component(a, scc.components[c])));
  }
  return best;
}

template <Backing T>
T eigenvalue(const Matrix<T>& a) {
  require_irreducible(a, "eigenvalue");
  std::vector<std::size_t> all(a.dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return karp_component(a, all);
}

template <Backing T>
Matrix<T> normalize(const Matrix<T>& a) {
  return shifted(a, eigenvalue(a));
}

template <Backing T>
Matrix<T> a_plus(const Matrix<T>& normalized, double tol) {
  const auto mean = max_cycle_mean(normalized);
  if (!is_unit(mean, tol)) {
    throw InputError("a_plus: matrix is not normalized (maximal circuit mean is " +
                     to_string(mean) + ")");
  }
  Matrix<T> power = normalized;
  Matrix<T> sum = normalized;
  for (std::size_t n = 2; n <= normalized.dim(); ++n) {
    power = mat_mul(power, normalized);
    sum = mat_oplus(sum, power);
  }
  const Matrix<T> next = mat_mul(power, normalized);
  if (!nearly_equal(mat_oplus(sum, next), sum, tol)) {
    throw ContractViolation("a_plus: A+ (+) A^{k+1} differs from A+");
  }
  return sum;
}

template <Backing T>
CriticalGraph critical_graph(const Matrix<T>& a, double tol) {
  require_irreducible(a, "critical_graph");
  const Matrix<T> bar = normalize(a);
  const Matrix<T> plus = a_plus(bar, tol);
  const std::size_t k = a.dim();

  CriticalGraph out;
  out.graph = Digraph(k);
  std::vector<bool> critical(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    critical[i] = is_unit(plus(i, i), tol);
    if (critical[i]) out.nodes.push_back(i);
  }
  for (std::size_t from = 0; from < k; ++from) {
    for (std::size_t to = 0; to < k; ++to) {
      if (!critical[from] || !critical[to]) continue;
      if (is_unit(otimes(bar(to, from), plus(from, to)), tol)) {
        out.arcs.emplace_back(from, to);
        out.graph.add_arc(from, to);
      }
    }
  }
  const auto scc = scc_decompose(out.graph);
  for (std::size_t c = 0; c < scc.count(); ++c) {
    if (critical[scc.components[c].front()]) out.components.push_back(scc.components[c]);
  }
  return out;
}

template <Backing T>
std::size_t cyclicity(const Matrix<T>& a, double tol) {
  return graph_cyclicity(critical_graph(a, tol).graph);
}

std::size_t default_power_budget(std::size_t dim) { return 10 * dim * dim + 64; }

CyclicityTransient cyclicity_and_transient(const Matrix<Rational>& a, std::size_t max_power) {
  const std::size_t d = cyclicity(a);
  const std::size_t budget = max_power == 0 ? default_power_budget(a.dim()) : max_power;
  const Matrix<Rational> bar = normalize(a);

  // window holds Ā^m, ..., Ā^{m+d}
  std::deque<Matrix<Rational>> window{bar};
  while (window.size() < d + 1) window.push_back(mat_mul(window.back(), bar));
  std::size_t m = 1;
  while (window.back() != window.front()) {
    if (m + d >= budget) {
      throw BudgetExhausted("cyclicity_and_transient: no repetition of period " +
                            std::to_string(d) + " up to power " + std::to_string(budget));
    }
    window.pop_front();
    window.push_back(mat_mul(window.back(), bar));
    ++m;
  }

  const Rational lambda = eigenvalue(a);
  const auto lhs = mat_power(a, m + d);
  const auto rhs = scale(Scalar<Rational>(Rational(lambda * static_cast<long>(d))), mat_power(a, m));
  if (lhs != rhs) {
    throw ContractViolation("cyclicity_and_transient: A^{M+d} != lambda^d A^M at M=" +
                            std::to_string(m));
  }
  return {d, m};
}

template <Backing T>
std::vector<ProjVector<T>> eigenbasis(const Matrix<T>& a, double tol) {
  const auto crit = critical_graph(a, tol);
  const T lambda = eigenvalue(a);
  const Matrix<T> plus = a_plus(normalize(a), tol);
  std::vector<ProjVector<T>> basis;
  for (const auto& component : crit.components) {
    const Vector<T> column = plus.column(component.front());
    const auto lhs = mat_vec(a, column);
    const auto rhs = scale(Scalar<T>(lambda), column);
    if (!nearly_equal(lhs, rhs, tol)) {
      throw ContractViolation("eigenbasis: critical column " +
                              std::to_string(component.front() + 1) + " is not an eigenvector");
    }
    basis.push_back(ProjVector<T>::canonical(column));
  }
  return basis;
}

template <Backing T>
SpectralSummary<T> classify(const Matrix<T>& a, bool with_transient, std::size_t max_power) {
  SpectralSummary<T> out{eigenvalue(a), critical_graph(a), 1, std::nullopt, false, {}, {}};
  out.cyclicity = graph_cyclicity(out.critical.graph);
  out.scs1cyc1 = out.critical.scc_count() == 1 && out.cyclicity == 1;
  for (const auto& component : out.critical.components) {
    out.eigenbasis_nodes.push_back(component.front());
  }
  out.eigenbasis = eigenbasis(a);
  if (with_transient) {
    if constexpr (is_exact_v<T>) {
      const auto ct = cyclicity_and_transient(a, max_power);
      out.transient = ct.transient;
    } else {
      throw ContractViolation("the transient is only computed with exact backing");
    }
  }
  return out;
}

template <Backing T>
std::optional<Vector<T>> span_membership(const std::vector<Vector<T>>& columns,
                                         const Vector<T>& b, double tol) {
  if (columns.empty()) throw InputError("span_membership: empty column list");
  const std::size_t k = b.size();
  for (const auto& c : columns) detail::require_same_dim(c.size(), k, "span_membership");

  Vector<T> alpha(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    std::optional<T> residual;
    bool blocked = false;  // some finite C_ij faces b_i = ε
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& c = columns[j][i];
      if (c.is_epsilon()) continue;
      any = true;
      if (b[i].is_epsilon()) {
        blocked = true;
        break;
      }
      T r = b[i].value() - c.value();
      if (!residual || r < *residual) residual = std::move(r);
    }
    if (any && !blocked) alpha[j] = Scalar<T>(std::move(*residual));
  }

  Vector<T> image(k);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    image = vec_oplus(image, scale(alpha[j], columns[j]));
  }
  if (!nearly_equal(image, b, tol)) return std::nullopt;
  return alpha;
}

template <Backing T>
std::size_t weak_rank(const Matrix<T>& a, double tol) {
  const std::size_t k = a.dim();
  std::vector<Vector<T>> columns;
  for (std::size_t j = 0; j < k; ++j) {
    columns.push_back(a.column(j));
    bool any = false;
    for (const auto& c : columns.back()) any = any || c.is_finite();
    if (!any) throw InputError("weak_rank: column " + std::to_string(j + 1) + " is all epsilon");
  }
  std::vector<bool> kept(k, true);
  std::size_t rank = k;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Vector<T>> others;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != j && kept[i]) others.push_back(columns[i]);
    }
    if (others.empty()) continue;
    if (span_membership(others, columns[j], tol)) {
      kept[j] = false;
      --rank;
    }
  }
  return rank;
}

#define MAXPLUS_INSTANTIATE_SPECTRAL(T)                                                      \
  template Scalar<T> max_cycle_mean(const Matrix<T>&);                                       \
  template T eigenvalue(const Matrix<T>&);                                                   \
  template Matrix<T> normalize(const Matrix<T>&);                                            \
  template Matrix<T> a_plus(const Matrix<T>&, double);                                       \
  template CriticalGraph critical_graph(const Matrix<T>&, double);                           \
  template std::size_t cyclicity(const Matrix<T>&, double);                                  \
  template std::vector<ProjVector<T>> eigenbasis(const Matrix<T>&, double);                  \
  template SpectralSummary<T> classify(const Matrix<T>&, bool, std::size_t);                 \
  template std::optional<Vector<T>> span_membership(const std::vector<Vector<T>>&,           \
                                                    const Vector<T>&, double);               \
  template std::size_t weak_rank(const Matrix<T>&, double);

MAXPLUS_INSTANTIATE_SPECTRAL(Rational)
MAXPLUS_INSTANTIATE_SPECTRAL(double)

}  // namespace maxplus
