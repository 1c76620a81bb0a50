#pragma once

#include <vector>

#include "core/graph.hpp"
#include "core/layout.hpp"
#include "core/vec3.hpp"

namespace mis3d {

struct RoutedEdge {
  int u = 0, v = 0;      // original vertices, u < v
  int edge_id = 0;       // index into Graph::edges()
  std::vector<Cell> waypoints; // lattice path, waypoints.front()=cell(u), back()=cell(v)
  std::vector<Vec3> ancillas;  // placed along the path, chain order u -> v
  double spacing = 1.0;        // arc-length gap between consecutive chain atoms
};

// Route every edge as an axis-parallel lattice path. Straight even corridors
// go first (they have exactly one admissible shape), then edges by increasing
// length: a short chain's exit directions are dictated by the placement,
// while longer chains can still bend to dodge what is already there. Ties
// break by edge id. Paths keep Chebyshev distance >= 2 from all unrelated
// vertices and previously routed paths; around a shared endpoint only the one
// fan-out step may come closer, and there the inner ancillas must still clear
// the intra-family floor of 1.25. Beyond the obstacle rules, each path obeys
// placement constraints that keep the eventual atom chain blockade-exact and
// its interaction tails small:
//   - no direction change on the first or last step pair (arcs 1 and p-1),
//   - no two non-consecutive cells of one path at L1 distance 1,
//   - even-parity edges use length p >= 8 with corners >= 2 arc units apart.
// Even-parity lengths below 8 would put fractionally spaced ancillas close
// enough for spurious blockade pairs at bends and shared endpoints, so such
// edges take the smallest feasible length of the right parity instead of the
// unconstrained shortest path. Throws errc::routing when an edge cannot be
// routed; the embedding driver then retries at a coarser scale.
std::vector<RoutedEdge> route_edges(const Graph& g, const LatticeLayout& l);

// Chain atoms for one routed path of length p: p odd -> p-1 ancillas on the
// interior lattice points; p even -> p ancillas evenly spaced along the path's
// arc length (spacing p/(p+1) < 1). Requires p >= 2.
std::vector<Vec3> place_ancillas(const std::vector<Cell>& waypoints, double* spacing_out = nullptr);

struct AugChain {
  int u = 0, v = 0;
  int edge_id = 0;
  double spacing = 1.0;
  std::vector<int> atoms; // [atom(u), ancillas..., atom(v)]
};

struct AugmentedGraph {
  int n_original = 0;
  std::vector<Vec3> pos;
  std::vector<int8_t> kind;  // 0 original, 1 ancilla
  std::vector<int> source;   // vertex id for originals, edge id for ancillas
  std::vector<AugChain> chains;

  int total_atoms() const { return int(pos.size()); }
  int ancilla_atoms() const { return total_atoms() - n_original; }
};

// Assemble atoms: originals first (atom id == vertex id), then ancillas in
// canonical edge order. Validates the even-ancilla parity rule, distinctness
// of positions, and the chain clearance margins; violations are errors, not
// warnings, because the oracle's blockade model depends on them.
AugmentedGraph build_augmented_graph(const Graph& g, const LatticeLayout& l,
                                     const std::vector<RoutedEdge>& routes);

// Intended adjacency: consecutive atoms along every chain.
Graph chain_graph(const AugmentedGraph& aug);

} // namespace mis3d
