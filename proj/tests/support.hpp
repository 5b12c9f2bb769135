#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance runner.  The oracles deliberately avoid the library's graph and
// spectral code: circuits are enumerated directly and connectivity comes from
// a Warshall closure.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxplus/json_io.hpp"
#include "maxplus/rng.hpp"

namespace fixtures {

using maxplus::Matrix;
using maxplus::Rational;
using maxplus::Scalar;
using maxplus::Vector;

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Matrix<Rational> M(const char* text) { return Matrix<Rational>::parse(text); }
inline Matrix<double> Mf(const char* text) { return Matrix<double>::parse(text); }

inline Vector<Rational> V(std::initializer_list<Rational> values) {
  return Vector<Rational>::from_values(std::vector<Rational>(values));
}

inline Vector<double> Vf(std::initializer_list<double> values) {
  return Vector<double>::from_values(std::vector<double>(values));
}

/// Small rational in [-8, 8] with denominator 1..4.
inline Rational random_rational(maxplus::Rng& rng) {
  std::uniform_int_distribution<long> den(1, 4);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(-8 * d, 8 * d);
  return q(num(rng), d);
}

inline Matrix<Rational> random_matrix(maxplus::Rng& rng, std::size_t k, double eps_probability) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix<Rational> a(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (coin(rng) >= eps_probability) a(i, j) = Scalar<Rational>(random_rational(rng));
    }
  }
  return a;
}

inline Matrix<Rational> random_full(maxplus::Rng& rng, std::size_t k) {
  return random_matrix(rng, k, 0.0);
}

inline Vector<Rational> random_vector(maxplus::Rng& rng, std::size_t k) {
  Vector<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = Scalar<Rational>(random_rational(rng));
  return x;
}

/// reach[i][j]: a walk of length ≥ 1 from i to j (arc i -> j iff A(j, i) ≠ ε).
template <class T>
std::vector<std::vector<bool>> reachability(const Matrix<T>& a) {
  const std::size_t k = a.dim();
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) reach[i][j] = a(j, i).is_finite();
  }
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!reach[i][m]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (reach[m][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

template <class T>
bool oracle_irreducible(const Matrix<T>& a) {
  // A^0 = E, so the diagonal needs no walk.
  const auto reach = reachability(a);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j && !reach[i][j]) return false;
    }
  }
  return true;
}

/// Irreducible random matrix: redraw until strongly connected.
inline Matrix<Rational> random_irreducible(maxplus::Rng& rng, std::size_t k) {
  std::uniform_int_distribution<int> density(0, 2);
  for (;;) {
    auto a = random_matrix(rng, k, 0.25 * density(rng));
    if (oracle_irreducible(a)) return a;
  }
}

struct Circuit {
  std::vector<std::size_t> nodes;  // start at the least node, in walk order
  Rational weight;
};

/// Every elementary circuit, each once (rooted at its least node).
inline std::vector<Circuit> simple_circuits(const Matrix<Rational>& a) {
  const std::size_t k = a.dim();
  std::vector<Circuit> out;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(k, false);
  std::function<void(std::size_t, std::size_t, Rational)> dfs = [&](std::size_t root, std::size_t at,
                                                                    Rational weight) {
    for (std::size_t next = root; next < k; ++next) {
      const auto& w = a(next, at);  // arc at -> next
      if (w.is_epsilon()) continue;
      if (next == root) {
        out.push_back({path, weight + w.value()});
      } else if (!on_path[next]) {
        on_path[next] = true;
        path.push_back(next);
        dfs(root, next, weight + w.value());
        path.pop_back();
        on_path[next] = false;
      }
    }
  };
  for (std::size_t root = 0; root < k; ++root) {
    path = {root};
    on_path.assign(k, false);
    on_path[root] = true;
    dfs(root, root, Rational(0));
  }
  return out;
}

inline std::optional<Rational> oracle_max_cycle_mean(const Matrix<Rational>& a) {
  std::optional<Rational> best;
  for (const auto& c : simple_circuits(a)) {
    Rational mean = c.weight / Rational(static_cast<long>(c.nodes.size()));
    if (!best || *best < mean) best = mean;
  }
  return best;
}

/// lcm over strongly connected classes of the gcd of circuit lengths, with
/// classes taken from the reachability closure.
inline std::size_t oracle_cyclicity(const Matrix<Rational>& a) {
  const auto reach = reachability(a);
  const std::size_t k = a.dim();
  std::vector<std::size_t> cls(k);
  for (std::size_t i = 0; i < k; ++i) {
    cls[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (reach[i][j] && reach[j][i]) {
        cls[i] = cls[j];
        break;
      }
    }
  }
  std::vector<std::size_t> gcds(k, 0);
  for (const auto& c : simple_circuits(a)) {
    auto& g = gcds[cls[c.nodes.front()]];
    g = std::gcd(g, c.nodes.size());
  }
  std::size_t out = 1;
  for (auto g : gcds) {
    if (g) out = std::lcm(out, g);
  }
  return out;
}

/// Nodes and arcs lying on a circuit of maximal mean.
struct OracleCritical {
  std::vector<bool> nodes;
  std::vector<std::vector<bool>> arcs;  // arcs[from][to]
};

inline OracleCritical oracle_critical(const Matrix<Rational>& a) {
  const std::size_t k = a.dim();
  OracleCritical out{std::vector<bool>(k, false), std::vector<std::vector<bool>>(k, std::vector<bool>(k, false))};
  const auto lambda = oracle_max_cycle_mean(a);
  if (!lambda) return out;
  for (const auto& c : simple_circuits(a)) {
    if (c.weight != *lambda * Rational(static_cast<long>(c.nodes.size()))) continue;
    for (std::size_t p = 0; p < c.nodes.size(); ++p) {
      const std::size_t from = c.nodes[p];
      const std::size_t to = c.nodes[(p + 1) % c.nodes.size()];
      out.nodes[from] = true;
      out.arcs[from][to] = true;
    }
  }
  return out;
}

/// sup over many random pairs of d(Au, Av), plus the unit-like pairs that
/// should attain the column-pair value.
inline Rational sampled_diameter(const Matrix<Rational>& a, maxplus::Rng& rng, std::size_t samples) {
  Rational best = 0;
  const std::size_t k = a.dim();
  auto consider = [&](const Vector<Rational>& u, const Vector<Rational>& v) {
    const auto d = maxplus::proj_dist(maxplus::mat_vec(a, u), maxplus::mat_vec(a, v));
    if (best < d.value()) best = d.value();
  };
  for (std::size_t s = 0; s < samples; ++s) consider(random_vector(rng, k), random_vector(rng, k));
  // u = e_i, v = e_j with very small off-coordinates isolates columns i, j.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Vector<Rational> u = Vector<Rational>::filled(k, Scalar<Rational>(Rational(-100000)));
      Vector<Rational> v = u;
      u[i] = Scalar<Rational>::unit();
      v[j] = Scalar<Rational>::unit();
      consider(u, v);
    }
  }
  return best;
}

/// CJN matrix with integer services.
inline Matrix<Rational> cjn(std::initializer_list<long> sigma) {
  std::vector<Rational> s;
  for (long v : sigma) s.emplace_back(v);
  return maxplus::cjn_matrix(s);
}

inline maxplus::MatrixDistribution<Rational> cjn_iid(const std::vector<std::vector<long>>& atoms,
                                                    const std::vector<Rational>& p) {
  std::vector<Matrix<Rational>> mats;
  for (const auto& a : atoms) {
    std::vector<Rational> s(a.begin(), a.end());
    mats.push_back(maxplus::cjn_matrix(s));
  }
  return maxplus::MatrixDistribution<Rational>::iid(mats, p);
}

/// Slow matrices with parameter eta: A = [[1-eta, 0], [0, 1]], B = [[1, 0], [0, 1-eta]].
inline Matrix<Rational> slow_a(const Rational& eta) {
  Matrix<Rational> a(2);
  a(0, 0) = Scalar<Rational>(Rational(1) - eta);
  a(0, 1) = Scalar<Rational>::unit();
  a(1, 0) = Scalar<Rational>::unit();
  a(1, 1) = Scalar<Rational>(Rational(1));
  return a;
}

inline Matrix<Rational> slow_b(const Rational& eta) {
  Matrix<Rational> b(2);
  b(0, 0) = Scalar<Rational>(Rational(1));
  b(0, 1) = Scalar<Rational>::unit();
  b(1, 0) = Scalar<Rational>::unit();
  b(1, 1) = Scalar<Rational>(Rational(1) - eta);
  return b;
}

/// [[U, 0], [0, U]] with U uniform on [0, 1].
template <maxplus::Backing T>
maxplus::MatrixDistribution<T> uniform_diag_law() {
  return maxplus::json::distribution_from<T>(maxplus::json::Json::parse(
      R"({"generator": {"k": 2, "variables": {"U": {"uniform": [0, 1]}},
          "cases": [{"p": 1, "entries": [["U", 0], [0, "U"]]}]}})"));
}

/// Twisted support: A = [[ε, 0], [0, 1]], B = [[0, 0], [1, ε]].
inline std::vector<Matrix<Rational>> twisted_support() { return {M("eps 0; 0 1"), M("0 0; 1 eps")}; }

}  // namespace fixtures
