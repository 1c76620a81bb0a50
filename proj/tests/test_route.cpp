#include <doctest.h>

#include <cmath>
#include <map>

#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/layout.hpp"
#include "core/route.hpp"

using namespace mis3d;

namespace {

bool at(const Vec3& v, double x, double y, double z) {
  return dist(v, Vec3{x, y, z}) < 1e-12;
}

// Chain-family relation used by the clearance rules: atoms of one chain, or
// of two chains sharing an endpoint vertex.
bool related(const AugmentedGraph& aug, int a, int b) {
  auto chains_of = [&](int atom) {
    std::vector<int> r;
    for (size_t c = 0; c < aug.chains.size(); ++c) {
      const AugChain& ch = aug.chains[c];
      for (int id : ch.atoms)
        if (id == atom) {
          r.push_back(int(c));
          break;
        }
    }
    return r;
  };
  for (int ca : chains_of(a)) {
    for (int cb : chains_of(b)) {
      if (ca == cb) return true;
      const AugChain &x = aug.chains[size_t(ca)], &y = aug.chains[size_t(cb)];
      if (x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v) return true;
    }
  }
  return false;
}

void check_geometry(const Graph& g, const LatticeLayout& l,
                    const std::vector<RoutedEdge>& routes) {
  for (const RoutedEdge& r : routes) {
    const auto& w = r.waypoints;
    REQUIRE(w.size() >= 4);
    CHECK(g.has_edge(r.u, r.v));
    CHECK(w.front() == l.cells[size_t(r.u)]);
    CHECK(w.back() == l.cells[size_t(r.v)]);

    int p = int(w.size()) - 1;
    int d = l1(w.front(), w.back());
    CHECK(p % 2 == d % 2);  // parity is preserved, never repaired

    for (int i = 0; i < p; ++i) {
      CHECK(l1(w[size_t(i)], w[size_t(i) + 1]) == 1);  // unit axis steps
    }

    // corners: never on the first or last arc, and for fractionally spaced
    // chains never on consecutive arcs either
    int prev_corner = -10;
    for (int i = 1; i < p; ++i) {
      Cell a = w[size_t(i)] - w[size_t(i) - 1];
      Cell b = w[size_t(i) + 1] - w[size_t(i)];
      if (!(a == b)) {
        CHECK(i != 1);
        CHECK(i != p - 1);
        if (p % 2 == 0) CHECK(i - prev_corner >= 2);
        prev_corner = i;
      }
    }

    // ancilla count and spacing follow the path length alone
    if (p % 2 == 1) {
      CHECK(int(r.ancillas.size()) == p - 1);
      CHECK(r.spacing == 1.0);
    } else {
      CHECK(int(r.ancillas.size()) == p);
      CHECK(r.spacing == doctest::Approx(double(p) / (p + 1)));
    }
    CHECK(r.ancillas.size() % 2 == 0);
  }
}

} // namespace

TEST_CASE("straight odd chains use the interior lattice points") {
  Graph g(3, {{0, 1}, {1, 2}});
  LatticeLayout l;
  l.cells = {{0, 0, 0}, {3, 0, 0}, {6, 0, 0}};
  auto routes = route_edges(g, l);
  REQUIRE(routes.size() == 2);
  check_geometry(g, l, routes);

  const RoutedEdge& r0 = routes[0].edge_id == 0 ? routes[0] : routes[1];
  REQUIRE(r0.ancillas.size() == 2);
  CHECK(at(r0.ancillas[0], 1, 0, 0));
  CHECK(at(r0.ancillas[1], 2, 0, 0));
}

TEST_CASE("straight even chain squeezes in one extra atom") {
  Graph g(2, {{0, 1}});
  LatticeLayout l;
  l.cells = {{0, 0, 0}, {4, 0, 0}};
  auto routes = route_edges(g, l);
  REQUIRE(routes.size() == 1);
  check_geometry(g, l, routes);

  const RoutedEdge& r = routes[0];
  REQUIRE(r.ancillas.size() == 4);
  CHECK(r.spacing == doctest::Approx(0.8));
  CHECK(r.ancillas[0].x == doctest::Approx(0.8));
  CHECK(r.ancillas[1].x == doctest::Approx(1.6));
  CHECK(r.ancillas[2].x == doctest::Approx(2.4));
  CHECK(r.ancillas[3].x == doctest::Approx(3.2));
}

TEST_CASE("place_ancillas pins the arc positions") {
  std::vector<Cell> line;
  for (int i = 0; i <= 2; ++i) line.push_back({i, 0, 0});
  double s = 0;
  auto a = place_ancillas(line, &s);
  REQUIRE(a.size() == 2);
  CHECK(s == doctest::Approx(2.0 / 3.0));
  CHECK(a[0].x == doctest::Approx(2.0 / 3.0));
  CHECK(a[1].x == doctest::Approx(4.0 / 3.0));

  line.push_back({3, 0, 0});
  a = place_ancillas(line, &s);
  REQUIRE(a.size() == 2);
  CHECK(s == doctest::Approx(1.0));
  CHECK(at(a[0], 1, 0, 0));
  CHECK(at(a[1], 2, 0, 0));

  // bent path: arc positions follow the path, not the straight line
  std::vector<Cell> bent = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0},
                            {2, 1, 0}, {2, 2, 0}, {2, 3, 0}};
  a = place_ancillas(bent, &s);
  REQUIRE(a.size() == 4);
  CHECK(s == doctest::Approx(1.0));
  CHECK(at(a[1], 2, 0, 0));  // the corner cell itself
  CHECK(at(a[2], 2, 1, 0));

  std::vector<Cell> tooshort = {{0, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(place_ancillas(tooshort), error);
}

TEST_CASE("routed instances keep every geometric invariant") {
  for (uint64_t seed : {1001, 1016, 1026, 1043}) {
    int n = 2 + int(seed - 1000) % 9;
    Graph g = erdos_renyi_bounded(n, 0.30, 6, seed);
    if (g.edge_count() == 0) continue;
    LatticeLayout l = compact_lattice_layout(g, 3, seed);
    std::vector<RoutedEdge> routes;
    try {
      routes = route_edges(g, l);
    } catch (const error&) {
      // a single scale may legitimately be unroutable; the embed driver
      // escalates, here we just take the next sample
      continue;
    }
    CAPTURE(seed);
    check_geometry(g, l, routes);

    AugmentedGraph aug = build_augmented_graph(g, l, routes);
    CHECK(aug.n_original == n);
    CHECK(aug.ancilla_atoms() % 2 == 0);
    for (int v = 0; v < n; ++v) {
      CHECK(aug.kind[size_t(v)] == 0);
      CHECK(aug.source[size_t(v)] == v);
    }
    for (const AugChain& c : aug.chains) {
      CHECK((int(c.atoms.size()) - 2) % 2 == 0);
      CHECK(c.atoms.front() == c.u);
      CHECK(c.atoms.back() == c.v);
    }

    // independent clearance scan: chain families may come down to 1.25,
    // everything else stays at 1.3 or farther
    int n_plus = aug.total_atoms();
    for (int a = 0; a < n_plus; ++a) {
      for (int b = a + 1; b < n_plus; ++b) {
        bool same_chain_neighbors = false;
        for (const AugChain& c : aug.chains) {
          for (size_t i = 0; i + 1 < c.atoms.size(); ++i) {
            if ((c.atoms[i] == a && c.atoms[i + 1] == b) ||
                (c.atoms[i] == b && c.atoms[i + 1] == a)) {
              same_chain_neighbors = true;
            }
          }
        }
        if (same_chain_neighbors) continue;  // intended blockade pair
        double dist_ab = dist(aug.pos[size_t(a)], aug.pos[size_t(b)]);
        double need = related(aug, a, b) ? 1.25 : 1.3 - 1e-9;
        CAPTURE(a);
        CAPTURE(b);
        CHECK(dist_ab >= need);
      }
    }

    // the intended adjacency has one link per consecutive chain pair
    Graph cg = chain_graph(aug);
    size_t expect = 0;
    for (const AugChain& c : aug.chains) expect += c.atoms.size() - 1;
    CHECK(size_t(cg.edge_count()) == expect);
  }
}

TEST_CASE("tampered routes are rejected") {
  Graph g(2, {{0, 1}});
  LatticeLayout l;
  l.cells = {{0, 0, 0}, {3, 0, 0}};
  auto routes = route_edges(g, l);
  REQUIRE(routes.size() == 1);

  auto broken = routes;
  broken[0].ancillas[0] = broken[0].ancillas[1];  // coincident atoms
  CHECK_THROWS_AS(build_augmented_graph(g, l, broken), error);

  auto odd = routes;
  odd[0].ancillas.pop_back();  // odd ancilla count
  CHECK_THROWS_AS(build_augmented_graph(g, l, odd), error);
}
