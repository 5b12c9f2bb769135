#include "maxplus/patterns.hpp"

#include <unordered_set>

#include "maxplus/errors.hpp"
#include "maxplus/projective.hpp"
#include "maxplus/spectral.hpp"

namespace maxplus {

const char* to_string(Saturation s) {
  return s == Saturation::saturated ? "saturated" : "truncated";
}

namespace {

// Admissible continuations: every letter for i.i.d. laws, kernel-positive
// letters for Markov laws.
struct Admissibility {
  std::vector<std::size_t> initial;
  std::vector<std::vector<std::size_t>> next;  // empty when i.i.d.

  const std::vector<std::size_t>& after(std::size_t last) const {
    return next.empty() ? initial : next[last];
  }
  bool markov() const { return !next.empty(); }
};

template <Backing T>
Admissibility admissibility(const MatrixDistribution<T>& law, std::size_t letters) {
  Admissibility adm;
  if (law.is_markov()) {
    const auto& f = law.finite();
    for (std::size_t u = 0; u < letters; ++u) {
      if (law.stationary()[u] > 0.0) adm.initial.push_back(u);
    }
    adm.next.resize(letters);
    for (std::size_t u = 0; u < letters; ++u) {
      for (std::size_t v = 0; v < letters; ++v) {
        if (from_int<T>(0) < f.kernel[u][v]) adm.next[u].push_back(v);
      }
    }
  } else {
    for (std::size_t u = 0; u < letters; ++u) adm.initial.push_back(u);
  }
  return adm;
}

std::string key_of(const Matrix<Rational>& canon, std::size_t last, bool markov) {
  std::string key = canon.to_string();
  if (markov) key += "|" + std::to_string(last);
  return key;
}

bool is_scs1cyc1(const Matrix<Rational>& c) {
  if (!is_irreducible(c)) return false;
  return classify(c).scs1cyc1;
}

PatternFinding make_finding(const MatrixDistribution<Rational>& law,
                            const std::vector<std::size_t>& word) {
  const auto& f = law.finite();
  PatternFinding out;
  out.word = word;
  out.product = f.matrices[word.front()];
  for (std::size_t n = 1; n < word.size(); ++n) out.product = mat_mul(f.matrices[word[n]], out.product);
  out.rank_one = is_rank_one(out.product);
  out.scs1cyc1 = is_scs1cyc1(out.product);
  out.probability = law.word_probability(word);
  return out;
}

}  // namespace

PatternReport pattern_search(const MatrixDistribution<Rational>& law,
                             const PatternOptions& options) {
  const auto& f = law.finite();
  const auto adm = admissibility(law, f.matrices.size());
  PatternReport report;

  struct Node {
    Matrix<Rational> canon;
    std::vector<std::size_t> word;
  };
  std::unordered_set<std::string> seen;
  std::vector<Node> level;

  // Returns true when the search is over (rank-1 pattern found).
  auto visit = [&](Matrix<Rational> product, std::vector<std::size_t> word,
                   std::vector<Node>& into) {
    if (product.is_all_epsilon()) return false;
    Matrix<Rational> canon = canonical_matrix(product);
    if (!seen.insert(key_of(canon, word.back(), adm.markov())).second) return false;
    ++report.explored;
    if (const auto d = proj_diameter(canon); !d.is_infinite()) {
      if (!report.min_diameter || d.value() < *report.min_diameter) report.min_diameter = d.value();
    }
    report.max_length = std::max(report.max_length, word.size());
    if (is_rank_one(canon)) {
      report.found = true;
      report.pattern = make_finding(law, word);
      return true;
    }
    if (!report.scs1cyc1_only && is_scs1cyc1(canon)) {
      report.scs1cyc1_only = make_finding(law, word);
    }
    into.push_back(Node{std::move(canon), std::move(word)});
    return false;
  };

  for (auto u : adm.initial) {
    if (visit(f.matrices[u], {u}, level)) return report;
  }
  for (std::size_t len = 2; !level.empty(); ++len) {
    if (len > options.max_len || report.explored >= options.budget) {
      report.saturation = Saturation::truncated;
      return report;
    }
    std::vector<Node> next;
    for (const auto& node : level) {
      for (auto u : adm.after(node.word.back())) {
        auto word = node.word;
        word.push_back(u);
        if (visit(mat_mul(f.matrices[u], node.canon), std::move(word), next)) return report;
      }
    }
    level = std::move(next);
  }
  report.saturation = Saturation::saturated;
  return report;
}

std::optional<std::size_t> first_rank_one_power(const Matrix<Rational>& a, std::size_t budget) {
  if (a.is_all_epsilon()) return std::nullopt;
  Matrix<Rational> p = canonical_matrix(a);
  for (std::size_t n = 1; n <= budget; ++n) {
    if (is_rank_one(p)) return n;
    p = mat_mul(p, a);
    if (p.is_all_epsilon()) return std::nullopt;
    p = canonical_matrix(p);
  }
  return std::nullopt;
}

template <Backing T>
StructuralConditions structural_conditions(const MatrixDistribution<T>& law,
                                           std::size_t budget) {
  std::vector<Matrix<T>> skeletons;
  if (law.is_finite()) {
    skeletons = law.finite().matrices;
  } else {
    skeletons = law.generator().skeletons;
    if (skeletons.empty()) {
      throw InputError("structural conditions: generator has no known epsilon-patterns");
    }
  }
  const std::size_t k = law.dim();
  using Pattern = std::vector<bool>;
  std::vector<Pattern> letters;
  for (const auto& m : skeletons) {
    Pattern p(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) p[i * k + j] = m(i, j).is_finite();
    }
    letters.push_back(std::move(p));
  }

  StructuralConditions out;
  out.condition_one = true;
  for (std::size_t l = 0; l < skeletons.size() && out.condition_one; ++l) {
    if (const auto row = skeletons[l].first_epsilon_row()) {
      out.condition_one = false;
      out.starved = std::make_pair(l, *row);
    }
  }

  Admissibility adm;
  if (law.is_finite()) {
    adm = admissibility(law, letters.size());
  } else {
    for (std::size_t u = 0; u < letters.size(); ++u) adm.initial.push_back(u);
  }

  auto full = [](const Pattern& p) {
    for (bool b : p) {
      if (!b) return false;
    }
    return true;
  };
  auto times = [k](const Pattern& a, const Pattern& c) {
    Pattern out(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        bool any = false;
        for (std::size_t l = 0; l < k && !any; ++l) any = a[i * k + l] && c[l * k + j];
        out[i * k + j] = any;
      }
    }
    return out;
  };
  auto key = [&](const Pattern& p, std::size_t last) {
    std::string s(p.size(), '0');
    for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] ? '1' : '0';
    if (adm.markov()) s += "|" + std::to_string(last);
    return s;
  };

  struct Node {
    Pattern pattern;
    std::vector<std::size_t> word;
  };
  std::unordered_set<std::string> seen;
  std::vector<Node> level;
  for (auto u : adm.initial) {
    if (!seen.insert(key(letters[u], u)).second) continue;
    ++out.explored;
    if (full(letters[u])) {
      out.condition_two = true;
      out.witness = {u};
      return out;
    }
    level.push_back(Node{letters[u], {u}});
  }
  while (!level.empty()) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (auto u : adm.after(node.word.back())) {
        Pattern p = times(letters[u], node.pattern);
        if (!seen.insert(key(p, u)).second) continue;
        auto word = node.word;
        word.push_back(u);
        ++out.explored;
        if (full(p)) {
          out.condition_two = true;
          out.witness = std::move(word);
          return out;
        }
        if (out.explored >= budget) {
          out.saturated = false;
          return out;
        }
        next.push_back(Node{std::move(p), std::move(word)});
      }
    }
    level = std::move(next);
  }
  return out;
}

template StructuralConditions structural_conditions(const MatrixDistribution<Rational>&,
                                                    std::size_t);
template StructuralConditions structural_conditions(const MatrixDistribution<double>&,
                                                    std::size_t);

}  // namespace maxplus
