#include "qsm/graph_aut.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <map>
#include <numeric>
#include <set>

#include "qsm/errors.hpp"

namespace qsm {

ColoredGraph::ColoredGraph(std::vector<int> vertexColors)
    : color_(std::move(vertexColors)), adj_(color_.size()) {}

void ColoredGraph::addEdge(std::size_t u, std::size_t v, int edgeColor) {
  if (u >= size() || v >= size()) throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("self loops are not supported");
  adj_[u].emplace_back(v, edgeColor);
  adj_[v].emplace_back(u, edgeColor);
  sorted_ = false;
}

void ColoredGraph::finalize() {
  if (sorted_) return;
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  sorted_ = true;
}

int ColoredGraph::edgeColor(std::size_t u, std::size_t v) const {
  const auto& a = adj_.at(u);
  auto it = std::lower_bound(a.begin(), a.end(), std::make_pair(v, std::numeric_limits<int>::min()));
  if (it == a.end() || it->first != v) return -1;
  return it->second;
}

bool ColoredGraph::isAutomorphism(const Permutation& p) const {
  if (p.size() != size()) return false;
  for (std::size_t v = 0; v < size(); ++v) {
    if (color_[v] != color_[p[v]]) return false;
    if (adj_[v].size() != adj_[p[v]].size()) return false;
    for (const auto& [w, c] : adj_[v])
      if (edgeColor(p[v], p[w]) != c) return false;
  }
  return true;
}

namespace {

using Coloring = std::vector<int>;

// Replaces values by their rank among the distinct values.
template <class Key>
Coloring rankKeys(const std::vector<Key>& keys, std::size_t& classes) {
  std::vector<Key> sorted(keys);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  classes = sorted.size();
  Coloring out(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v)
    out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  return out;
}

// Color refinement to the coarsest equitable coloring finer than `c`.
Coloring refine(const ColoredGraph& g, Coloring c) {
  std::size_t classes = 0;
  c = rankKeys(c, classes);
  while (true) {
    std::vector<std::vector<long>> sig(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
      std::vector<std::pair<int, int>> nb;
      nb.reserve(g.neighbors(v).size());
      for (const auto& [w, ec] : g.neighbors(v)) nb.emplace_back(ec, c[w]);
      std::sort(nb.begin(), nb.end());
      auto& s = sig[v];
      s.reserve(1 + 2 * nb.size());
      s.push_back(c[v]);
      for (const auto& [ec, cw] : nb) {
        s.push_back(ec);
        s.push_back(cw);
      }
    }
    std::size_t next = 0;
    Coloring refined = rankKeys(sig, next);
    if (next == classes) return c;
    c = std::move(refined);
    classes = next;
  }
}

Coloring individualize(const Coloring& c, std::size_t v) {
  std::vector<std::pair<int, int>> keys(c.size());
  for (std::size_t u = 0; u < c.size(); ++u) keys[u] = {c[u], u == v ? 0 : 1};
  std::size_t classes = 0;
  return rankKeys(keys, classes);
}

struct Search {
  const ColoredGraph& g;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::optional<Coloring> firstLeaf;
  std::vector<Permutation> found;

  void visit(const Coloring& c) {
    if (++nodes > budget)
      throw BudgetExceeded("automorphism search exceeded " + std::to_string(budget) + " nodes");
    // Cell sizes by color.
    std::map<int, std::size_t> cellSize;
    for (auto x : c) ++cellSize[x];
    int target = -1;
    std::size_t best = 0;
    for (const auto& [col, sz] : cellSize)
      if (sz > 1 && (target < 0 || sz < best)) {
        target = col;
        best = sz;
      }
    if (target < 0) {
      leaf(c);
      return;
    }
    for (std::size_t v = 0; v < c.size(); ++v)
      if (c[v] == target) visit(refine(g, individualize(c, v)));
  }

  void leaf(const Coloring& c) {
    if (!firstLeaf) {
      firstLeaf = c;
      found.push_back(identity());
      return;
    }
    // gamma maps the vertex with color x in the first leaf to the vertex
    // with color x in this leaf.
    Permutation byColor(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) byColor[c[v]] = v;
    Permutation gamma(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) gamma[v] = byColor[(*firstLeaf)[v]];
    if (g.isAutomorphism(gamma)) found.push_back(std::move(gamma));
  }

  Permutation identity() const {
    Permutation p(g.size());
    std::iota(p.begin(), p.end(), 0);
    return p;
  }
};

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

} // namespace

std::vector<Permutation> generateGroup(const std::vector<Permutation>& generators, std::size_t degree) {
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier)
      for (const auto& gen : generators) {
        auto y = compose(gen, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

AutomorphismGroup automorphismGroup(ColoredGraph graph, std::uint64_t budget) {
  graph.finalize();
  Coloring initial(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) initial[v] = graph.color(v);
  Search s{graph, budget, 0, std::nullopt, {}};
  if (graph.size() > 0) s.visit(refine(graph, initial));

  AutomorphismGroup out;
  out.nodes = s.nodes;
  out.elements = std::move(s.found);
  std::sort(out.elements.begin(), out.elements.end());
  out.order = static_cast<unsigned long>(std::max<std::size_t>(out.elements.size(), 1));

  Permutation id(graph.size());
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> closure{id};
  for (const auto& p : out.elements) {
    if (closure.count(p)) continue;
    out.generators.push_back(p);
    const auto group = generateGroup(out.generators, graph.size());
    closure = std::set<Permutation>(group.begin(), group.end());
  }
  return out;
}

} // namespace qsm
