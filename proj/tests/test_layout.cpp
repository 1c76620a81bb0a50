#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/layout.hpp"

using namespace mis3d;

namespace {

int min_pair_chebyshev(const std::vector<Cell>& cells) {
  int best = 1 << 20;
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j)
      best = std::min(best, chebyshev(cells[i], cells[j]));
  return best;
}

} // namespace

TEST_CASE("force directed layout is deterministic and finite") {
  Graph g = erdos_renyi_bounded(20, 0.2, 6, 9);
  FrParams p;
  p.seed = 11;
  auto a = fruchterman_reingold_3d(g, p);
  auto b = fruchterman_reingold_3d(g, p);
  REQUIRE(a.size() == 20);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(a[i].z == b[i].z);
    CHECK(std::isfinite(a[i].x));
  }

  p.seed = 12;
  auto c = fruchterman_reingold_3d(g, p);
  bool moved = false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].x != c[i].x) moved = true;
  CHECK(moved);
}

TEST_CASE("snap keeps the pairwise clearance") {
  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    Graph g = erdos_renyi_bounded(15, 0.25, 6, seed);
    FrParams p;
    p.seed = seed;
    LatticeLayout l = snap_to_grid(fruchterman_reingold_3d(g, p), 3);
    REQUIRE(int(l.cells.size()) == 15);
    CHECK(min_pair_chebyshev(l.cells) >= 3);
  }
}

TEST_CASE("snap passes an admissible integral layout through unchanged") {
  std::vector<Vec3> pts = {{0, 0, 0}, {3, 0, 0}, {0, 4, 0}, {3, 4, 5}};
  LatticeLayout l = snap_to_grid(pts, 3);
  REQUIRE(l.cells.size() == 4);
  CHECK(l.cells[0] == Cell{0, 0, 0});
  CHECK(l.cells[1] == Cell{3, 0, 0});
  CHECK(l.cells[2] == Cell{0, 4, 0});
  CHECK(l.cells[3] == Cell{3, 4, 5});
}

TEST_CASE("compact layout respects clearance and is deterministic") {
  for (uint64_t seed : {1, 7, 19}) {
    Graph g = erdos_renyi_bounded(9, 0.3, 6, seed);
    LatticeLayout a = compact_lattice_layout(g, 3, seed);
    LatticeLayout b = compact_lattice_layout(g, 3, seed);
    REQUIRE(a.cells.size() == 9);
    CHECK(a.cells == b.cells);
    CHECK(min_pair_chebyshev(a.cells) >= 3);

    LatticeLayout c = compact_lattice_layout(g, 5, seed);
    CHECK(min_pair_chebyshev(c.cells) >= 5);
  }
}

TEST_CASE("compact layout pins the translation to the origin corner") {
  Graph g = erdos_renyi_bounded(6, 0.4, 6, 3);
  LatticeLayout l = compact_lattice_layout(g, 3, 3);
  Cell lo = l.cells[0];
  for (const Cell& c : l.cells) {
    lo = {std::min(lo.x, c.x), std::min(lo.y, c.y), std::min(lo.z, c.z)};
  }
  CHECK(lo == Cell{0, 0, 0});
}

TEST_CASE("layout rejects scale below the grid minimum") {
  Graph g(2, {{0, 1}});
  CHECK_THROWS_AS(compact_lattice_layout(g, 2, 1), error);
}

TEST_CASE("bounding box side") {
  LatticeLayout l;
  CHECK(bounding_box_side(l) == 0);
  l.cells = {{0, 0, 0}, {3, 1, 0}, {1, 5, 2}};
  CHECK(bounding_box_side(l) == 5);  // widest axis extent, here y: 0..5
}
