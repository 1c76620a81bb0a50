#include <doctest.h>

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/mis.hpp"

using namespace mis3d;

TEST_CASE("graph stores edges canonically") {
  Graph g(4);
  g.add_edge(2, 0);
  g.add_edge(1, 3);
  // a reversed duplicate is still a duplicate
  CHECK_THROWS_AS(g.add_edge(0, 2), error);
  g.add_edge(0, 1);

  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  // sorted lexicographically, first < second
  CHECK(g.edges()[0] == Edge{0, 1});
  CHECK(g.edges()[1] == Edge{0, 2});
  CHECK(g.edges()[2] == Edge{1, 3});
  CHECK(g.has_edge(2, 0));
  CHECK(!g.has_edge(2, 3));
  CHECK(g.degree(0) == 2);
  CHECK(g.max_degree() == 2);

  const auto& nb = g.neighbors(0);
  CHECK(std::is_sorted(nb.begin(), nb.end()));
}

TEST_CASE("graph rejects bad vertices and self loops") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 3), error);
  CHECK_THROWS_AS(g.add_edge(-1, 1), error);
  CHECK_THROWS_AS(g.add_edge(1, 1), error);
}

TEST_CASE("graph json round trip") {
  Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
  std::string j = g.to_json();
  Graph h = Graph::from_json(j);
  CHECK(h.vertex_count() == 5);
  CHECK(h.edges() == g.edges());
  CHECK(h.to_json() == j);  // canonical form is a fixed point

  CHECK_THROWS_AS(Graph::from_json("not json"), error);
  CHECK_THROWS_AS(Graph::from_json(R"({"n": 2})"), error);
  CHECK_THROWS_AS(Graph::from_json(R"({"n": 2, "edges": [[0, 5]]})"), error);
}

TEST_CASE("random graphs are deterministic and respect the degree cap") {
  Graph a = erdos_renyi_bounded(30, 0.3, 6, 42);
  Graph b = erdos_renyi_bounded(30, 0.3, 6, 42);
  CHECK(a.edges() == b.edges());
  CHECK(a.max_degree() <= 6);

  Graph c = erdos_renyi_bounded(30, 0.3, 6, 43);
  CHECK(a.edges() != c.edges());  // different seed, different graph

  // dense request saturates at the cap rather than exceeding it
  Graph d = erdos_renyi_bounded(40, 0.9, 6, 7);
  CHECK(d.max_degree() <= 6);
  CHECK(d.edge_count() > 40);
}

TEST_CASE("independence test and cost function") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(is_independent_set(g, {0, 2}));
  CHECK(is_independent_set(g, {}));
  CHECK(!is_independent_set(g, {1, 2}));

  // each vertex contributes -1, each internal edge +U
  CHECK(mis_cost(g, {1, 0, 1, 0}, 10.0) == doctest::Approx(-2.0));
  CHECK(mis_cost(g, {1, 1, 0, 0}, 10.0) == doctest::Approx(-2.0 + 10.0));
}

TEST_CASE("exact mis on known graphs") {
  // path on 5: 0-1-2-3-4, optimum {0,2,4}
  Graph p5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  MisResult r = exact_mis(p5);
  CHECK(r.size == 3);
  CHECK(r.members == VertexSet{0, 2, 4});

  // cycle on 5 has MIS size 2; lexicographically smallest is {0,2}
  Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  r = exact_mis(c5);
  CHECK(r.size == 2);
  CHECK(r.members == VertexSet{0, 2});

  // complete graph: any single vertex; tie-break picks 0
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  r = exact_mis(k4);
  CHECK(r.size == 1);
  CHECK(r.members == VertexSet{0});

  // Petersen graph, MIS size 4
  Graph pet(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                 {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                 {5, 7}, {7, 9}, {5, 8}, {6, 8}, {6, 9}});
  CHECK(exact_mis(pet).size == 4);

  // empty graph: everything
  Graph e3(3);
  r = exact_mis(e3);
  CHECK(r.size == 3);
  CHECK(r.members == VertexSet{0, 1, 2});

  CHECK_THROWS_AS(exact_mis(Graph(50), 40), error);
}

TEST_CASE("exact mis agrees with brute force on random graphs") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    int n = 2 + int(seed % 11);
    Graph g = erdos_renyi_bounded(n, 0.35, 6, seed);
    int brute = 0;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
      VertexSet s;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) s.push_back(v);
      if (is_independent_set(g, s)) brute = std::max(brute, int(s.size()));
    }
    MisResult r = exact_mis(g);
    CAPTURE(seed);
    CHECK(r.size == brute);
    CHECK(is_independent_set(g, r.members));
    CHECK(int(r.members.size()) == brute);
  }
}

TEST_CASE("mis pair co-occurrence") {
  // triangle: three singleton optima, no pair ever co-occurs
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  auto co = mis_pair_co_occurrence(k3);
  CHECK(std::count(co.begin(), co.end(), 1) == 0);

  // star: the unique optimum is all leaves; center pairs with nobody
  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  co = mis_pair_co_occurrence(star);
  CHECK(co[1 * 4 + 2] == 1);
  CHECK(co[2 * 4 + 3] == 1);
  CHECK(co[0 * 4 + 1] == 0);
  CHECK(co[0 * 4 + 0] == 0);  // diagonal stays clear

  // 5-cycle: optima are exactly the five non-adjacent pairs
  Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  co = mis_pair_co_occurrence(c5);
  int live = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      if (co[size_t(a) * 5 + size_t(b)]) {
        ++live;
        CHECK(!c5.has_edge(a, b));
      }
  CHECK(live == 5);

  CHECK_THROWS_AS(mis_pair_co_occurrence(Graph(21)), error);
}

TEST_CASE("live pair table falls back to non-adjacency on large graphs") {
  Graph g = erdos_renyi_bounded(30, 0.2, 6, 5);
  auto t = live_pair_table(g, 16);
  for (int a = 0; a < 30; ++a) {
    for (int b = 0; b < 30; ++b) {
      bool expect = a != b && !g.has_edge(a, b);
      CHECK(t[size_t(a) * 30 + size_t(b)] == (expect ? 1 : 0));
    }
  }

  // small graphs get the exact table, a strict subset of non-adjacency
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  auto exact = live_pair_table(k3, 16);
  CHECK(std::count(exact.begin(), exact.end(), 1) == 0);
}
