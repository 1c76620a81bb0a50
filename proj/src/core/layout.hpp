#pragma once

#include <cstdint>
#include <vector>

#include "core/graph.hpp"
#include "core/vec3.hpp"

namespace mis3d {

struct FrParams {
  int iterations = 200;
  uint64_t seed = 1;
};

// Classic Fruchterman-Reingold in three dimensions: repulsion k^2/d between all
// pairs, attraction d^2/k along edges, displacement capped by a linearly
// cooling temperature. Unit ideal length k = 1; vertices start uniformly in a
// box of side n^(1/3) and the initial temperature is a tenth of that side.
std::vector<Vec3> fruchterman_reingold_3d(const Graph& g, const FrParams& params = {});

struct LatticeLayout {
  std::vector<Cell> cells; // one per vertex
};

// Round a continuous layout onto Z^3, normalized so the largest axis extent
// maps to scale*ceil(n^(1/3)) cells. Vertices are placed in index order; a
// vertex whose cell would come within Chebyshev distance `scale` of an earlier
// one probes concentric Chebyshev shells around its target (cells in
// lexicographic order) and takes the first admissible cell. An input that is
// already integral and satisfies the clearance is passed through unchanged, so
// snapping is idempotent.
LatticeLayout snap_to_grid(const std::vector<Vec3>& layout, int scale);

// Direct placement onto Z^3 for small graphs: a seeded greedy-plus-annealing
// search that keeps every vertex pair at Chebyshev distance >= scale while
// pulling edge endpoints toward short, axis-aligned, odd-L1 separations,
// which route into the cleanest chains. snap_to_grid only rounds a continuous
// layout and has no notion of routability; this is the alternative when the
// graph is small enough to afford the search.
LatticeLayout compact_lattice_layout(const Graph& g, int scale, uint64_t seed);

// Smallest axis-aligned bounding box side needed for the cells.
int bounding_box_side(const LatticeLayout& l);

} // namespace mis3d
