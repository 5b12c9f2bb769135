#include "maxplus/graphs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace maxplus {

void Digraph::add_arc(std::size_t from, std::size_t to) {
  auto& out = successors.at(from);
  auto it = std::lower_bound(out.begin(), out.end(), to);
  if (it == out.end() || *it != to) out.insert(it, to);
}

bool Digraph::has_arc(std::size_t from, std::size_t to) const {
  const auto& out = successors.at(from);
  return std::binary_search(out.begin(), out.end(), to);
}

std::size_t Digraph::arc_count() const {
  std::size_t n = 0;
  for (const auto& out : successors) n += out.size();
  return n;
}

template <Backing T>
PrecedenceGraph<T> graph_of(const Matrix<T>& a) {
  PrecedenceGraph<T> g{Digraph(a.dim()), {}};
  for (std::size_t from = 0; from < a.dim(); ++from) {
    for (std::size_t to = 0; to < a.dim(); ++to) {
      const auto& w = a(to, from);
      if (w.is_epsilon()) continue;
      g.topology.add_arc(from, to);
      g.arcs.push_back(Arc<T>{from, to, w.value()});
    }
  }
  return g;
}

template <Backing T>
Digraph structure_of(const Matrix<T>& a) {
  Digraph g(a.dim());
  for (std::size_t from = 0; from < a.dim(); ++from) {
    for (std::size_t to = 0; to < a.dim(); ++to) {
      if (a(to, from).is_finite()) g.add_arc(from, to);
    }
  }
  return g;
}

namespace {

// Iterative Tarjan; returns the component label of every node (labels in
// reverse topological order of discovery, renumbered by the caller).
std::vector<std::size_t> tarjan_labels(const Digraph& g, std::size_t& label_count) {
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  const std::size_t n = g.nodes;
  std::vector<std::size_t> index(n, unvisited), low(n, 0), label(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  label_count = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_child;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = g.successors[f.node];
      if (f.next_child < out.size()) {
        const std::size_t w = out[f.next_child++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = label_count;
        } while (w != v);
        ++label_count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
    }
  }
  return label;
}

std::optional<std::size_t> component_period(const Digraph& g,
                                            const std::vector<std::size_t>& members,
                                            const std::vector<std::size_t>& component_of,
                                            std::size_t component) {
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(g.nodes, unseen);
  std::queue<std::size_t> frontier;
  level[members.front()] = 0;
  frontier.push(members.front());
  std::size_t period = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : g.successors[u]) {
      if (component_of[v] != component) continue;
      if (level[v] == unseen) {
        level[v] = level[u] + 1;
        frontier.push(v);
      } else {
        const long gap = static_cast<long>(level[u]) + 1 - static_cast<long>(level[v]);
        period = std::gcd(period, static_cast<std::size_t>(gap < 0 ? -gap : gap));
      }
    }
  }
  // Tree arcs contribute gap 0; a component with circuits always yields a
  // positive gcd from its non-tree arcs.
  if (period == 0) return std::nullopt;
  return period;
}

}  // namespace

SccDecomposition scc_decompose(const Digraph& g) {
  std::size_t label_count = 0;
  const auto label = tarjan_labels(g, label_count);

  std::vector<std::vector<std::size_t>> groups(label_count);
  for (std::size_t v = 0; v < g.nodes; ++v) groups[label[v]].push_back(v);

  std::vector<std::set<std::size_t>> succ(label_count);
  std::vector<std::size_t> indegree(label_count, 0);
  for (std::size_t u = 0; u < g.nodes; ++u) {
    for (std::size_t v : g.successors[u]) {
      if (label[u] != label[v] && succ[label[u]].insert(label[v]).second) ++indegree[label[v]];
    }
  }

  // Kahn's algorithm keyed by the least node id of each component.
  using Key = std::pair<std::size_t, std::size_t>;  // (least node, label)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::size_t c = 0; c < label_count; ++c) {
    if (indegree[c] == 0) ready.push({groups[c].front(), c});
  }
  std::vector<std::size_t> order_of(label_count);
  SccDecomposition out;
  out.component_of.assign(g.nodes, 0);
  while (!ready.empty()) {
    const auto [least, c] = ready.top();
    ready.pop();
    order_of[c] = out.components.size();
    for (std::size_t v : groups[c]) out.component_of[v] = out.components.size();
    out.components.push_back(groups[c]);
    for (std::size_t d : succ[c]) {
      if (--indegree[d] == 0) ready.push({groups[d].front(), d});
    }
  }
  for (std::size_t c = 0; c < label_count; ++c) {
    for (std::size_t d : succ[c]) out.condensation_arcs.emplace_back(order_of[c], order_of[d]);
  }
  std::sort(out.condensation_arcs.begin(), out.condensation_arcs.end());

  out.cyclicity.reserve(out.components.size());
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    out.cyclicity.push_back(component_period(g, out.components[c], out.component_of, c));
  }
  return out;
}

bool is_strongly_connected(const Digraph& g) {
  if (g.nodes == 0) return false;
  std::size_t count = 0;
  tarjan_labels(g, count);
  return count == 1;
}

std::size_t graph_cyclicity(const Digraph& g) {
  const auto scc = scc_decompose(g);
  std::size_t result = 0;
  for (const auto& period : scc.cyclicity) {
    if (!period) continue;
    result = result == 0 ? *period : std::lcm(result, *period);
  }
  if (result == 0) throw InputError("graph_cyclicity: the graph has no circuit");
  return result;
}

template <Backing T>
std::string to_dot(const PrecedenceGraph<T>& g, const std::string& name) {
  std::string out = "digraph " + name + " {\n";
  for (std::size_t v = 0; v < g.topology.nodes; ++v) {
    out += "  n" + std::to_string(v + 1) + " [label=\"" + std::to_string(v + 1) + "\"];\n";
  }
  for (const auto& arc : g.arcs) {
    out += "  n" + std::to_string(arc.from + 1) + " -> n" + std::to_string(arc.to + 1) +
           " [label=\"" + to_string<T>(arc.weight) + "\"];\n";
  }
  return out + "}\n";
}

#define MAXPLUS_INSTANTIATE_GRAPHS(T)                                         \
  template PrecedenceGraph<T> graph_of(const Matrix<T>&);                     \
  template Digraph structure_of(const Matrix<T>&);                            \
  template std::string to_dot(const PrecedenceGraph<T>&, const std::string&);

MAXPLUS_INSTANTIATE_GRAPHS(Rational)
MAXPLUS_INSTANTIATE_GRAPHS(double)

}  // namespace maxplus
