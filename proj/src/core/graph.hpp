#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mis3d {

using Edge = std::pair<int, int>; // always stored with first < second

// Simple undirected graph on vertices 0..n-1. Edges are kept sorted
// lexicographically and deduplicated; the position of an edge in edges() is its
// canonical edge id, used everywhere downstream (routing order, chain labels).
class Graph {
public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<Edge>& edges);

  void add_edge(int u, int v);

  int vertex_count() const { return n_; }
  int edge_count() const { return int(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const;
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  int max_degree() const;

  std::string to_json() const;
  static Graph from_json(const std::string& text);

private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// G(n, p) with a hard degree cap: candidate pairs are visited in canonical
// lexicographic order and an edge is kept only if the coin lands and neither
// endpoint is saturated. Same arguments, same graph, on any platform.
Graph erdos_renyi_bounded(int n, double p, int max_degree, uint64_t seed);

// Membership as a sorted vertex list.
using VertexSet = std::vector<int>;

bool is_independent_set(const Graph& g, const VertexSet& s);

// C(z) = -|z| + U * (number of edges inside z). Requires U > max_degree(g) so
// that dropping a conflicting vertex always pays.
double mis_cost(const Graph& g, const std::vector<uint8_t>& z, double U);

} // namespace mis3d
