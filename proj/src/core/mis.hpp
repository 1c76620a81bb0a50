#pragma once

#include <cstdint>
#include <vector>

#include "core/graph.hpp"

namespace mis3d {

struct MisResult {
  VertexSet members; // sorted; among all optima, lexicographically smallest list
  int size = 0;
};

// Exact maximum independent set by branch and bound (greedy clique-cover upper
// bound, branch on a maximum-degree vertex). Deterministic: among all maximum
// independent sets the one whose sorted member list compares smallest is
// returned. `limit` guards against accidental huge inputs; raise it explicitly
// for the augmented registers, whose chain structure keeps the search easy.
MisResult exact_mis(const Graph& g, int limit = 40);

// Pairwise co-occurrence across all maximum independent sets: entry u*n+v is 1
// when some maximum independent set contains both u and v. The embedding
// heuristics use this to tell which vertex pairs can ever be simultaneously
// live; pairs that cannot need no geometric separation beyond the usual
// clearances. Exhaustive over all 2^n subsets, so refuses n > 20.
std::vector<uint8_t> mis_pair_co_occurrence(const Graph& g);

// Same table with a graceful fallback: exhaustive up to `exhaustive_max`
// vertices, beyond that every non-adjacent pair counts as able to co-occur,
// which overcharges a little but errs safe.
std::vector<uint8_t> live_pair_table(const Graph& g, int exhaustive_max = 16);

} // namespace mis3d
