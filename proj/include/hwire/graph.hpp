#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hwire/errors.hpp"

namespace hwire {

/// Finite simple graph: no loops, no multi-edges, vertex ids in [0, n).
/// Edge ids follow construction order; pairs are normalized to u < v.
class FiniteGraph {
 public:
  static FiniteGraph from_edge_list(int n,
                                    std::vector<std::pair<int, int>> pairs);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::pair<int, int>& edge(int e) const {
    return edges_.at(static_cast<std::size_t>(e));
  }
  const std::vector<int>& neighbors(int v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  const std::vector<int>& incident_edges(int v) const {
    return incident_.at(static_cast<std::size_t>(v));
  }
  int degree(int v) const {
    return static_cast<int>(adjacency_.at(static_cast<std::size_t>(v)).size());
  }
  int max_degree() const { return max_degree_; }

  bool edges_adjacent(int e, int t) const {
    auto [a, b] = edge(e);
    auto [c, d] = edge(t);
    return a == c || a == d || b == c || b == d;
  }
  bool edge_contains(int e, int v) const {
    auto [a, b] = edge(e);
    return a == v || b == v;
  }

 private:
  FiniteGraph() = default;
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> incident_;
  int max_degree_ = 0;
};

/// Directed edge list aligned with the graph's edges, smaller id first.
struct Orientation {
  std::vector<std::pair<int, int>> arcs;
};

Orientation orient(const FiniteGraph& g);

/// Simple d-regular graph on n vertices via the configuration model with
/// full restart on loops/collisions. Deterministic per seed.
FiniteGraph random_regular(int n, int d, std::uint64_t seed,
                           int max_restarts = 10000);

/// Edge-list text format: first line "n m", then m lines "u v"; '#' starts
/// a comment anywhere; blank lines ignored.
FiniteGraph parse_edge_list(const std::string& text);
std::string format_edge_list(const FiniteGraph& g);

}  // namespace hwire
