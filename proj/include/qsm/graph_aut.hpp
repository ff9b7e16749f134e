#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsm/rational.hpp"

namespace qsm {

using Permutation = std::vector<std::size_t>;

/// Undirected graph with colored vertices and colored edges.
class ColoredGraph {
public:
  explicit ColoredGraph(std::vector<int> vertexColors);

  std::size_t size() const noexcept { return color_.size(); }
  int color(std::size_t v) const { return color_.at(v); }
  /// Adds the undirected edge {u, v}. Self loops are rejected.
  void addEdge(std::size_t u, std::size_t v, int edgeColor = 0);
  /// Sorts adjacency lists; called automatically by the search.
  void finalize();

  const std::vector<std::pair<std::size_t, int>>& neighbors(std::size_t v) const { return adj_.at(v); }
  /// Edge color of {u, v}, or -1 when absent. Requires finalize().
  int edgeColor(std::size_t u, std::size_t v) const;
  bool isAutomorphism(const Permutation& p) const;

private:
  std::vector<int> color_;
  std::vector<std::vector<std::pair<std::size_t, int>>> adj_;
  bool sorted_ = true;
};

struct AutomorphismGroup {
  Integer order;
  /// Deterministic generating set, chosen greedily from the sorted element list.
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;
  std::uint64_t nodes = 0;
};

/// Full color-preserving automorphism group by equitable refinement and
/// individualization, branching on the first smallest non-singleton cell,
/// lowest vertex first. Every leaf of the search tree is examined, so the
/// order is exact. Throws BudgetExceeded after `budget` tree nodes.
AutomorphismGroup automorphismGroup(ColoredGraph graph, std::uint64_t budget);

/// Closure of a set of permutations under composition.
std::vector<Permutation> generateGroup(const std::vector<Permutation>& generators, std::size_t degree);

} // namespace qsm
