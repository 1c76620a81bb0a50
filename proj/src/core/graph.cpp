#include "core/graph.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/jsonio.hpp"
#include "core/rng.hpp"

namespace mis3d {

Graph::Graph(int n) : n_(n), adj_(size_t(std::max(n, 0))) {
  if (n < 0) fail(errc::invalid_argument, "graph: vertex count must be non-negative");
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    fail(errc::invalid_argument, "graph: vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) fail(errc::invalid_argument, "graph: self-loop at vertex " + std::to_string(u));
  if (u > v) std::swap(u, v);
  Edge e{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e)
    fail(errc::invalid_argument,
         "graph: duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  edges_.insert(it, e);
  adj_[size_t(u)].insert(std::lower_bound(adj_[size_t(u)].begin(), adj_[size_t(u)].end(), v), v);
  adj_[size_t(v)].insert(std::lower_bound(adj_[size_t(v)].begin(), adj_[size_t(v)].end(), u), u);
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[size_t(v)];
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

int Graph::degree(int v) const {
  check_vertex(v);
  return int(adj_[size_t(v)].size());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, int(a.size()));
  return d;
}

std::string Graph::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [u, v] : edges_) arr.push_back({u, v});
  j["edges"] = std::move(arr);
  return j.dump();
}

Graph Graph::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, std::string("graph: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") ||
      !j["n"].is_number_integer() || !j["edges"].is_array())
    fail(errc::parse, "graph: expected {\"n\": int, \"edges\": [[u,v],...]}");
  Graph g(j["n"].get<int>());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(errc::parse, "graph: each edge must be a pair of integers");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

Graph erdos_renyi_bounded(int n, double p, int max_degree, uint64_t seed) {
  if (n < 1) fail(errc::invalid_argument, "erdos_renyi_bounded: need n >= 1");
  if (p < 0.0 || p > 1.0) fail(errc::invalid_argument, "erdos_renyi_bounded: need p in [0,1]");
  if (max_degree < 0) fail(errc::invalid_argument, "erdos_renyi_bounded: bad degree cap");
  Graph g(n);
  Rng rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      // Draw for every pair, kept or not, so the stream position (and hence the
      // rest of the graph) does not depend on earlier degree saturation.
      double coin = rng.uniform01();
      if (coin < p && g.degree(u) < max_degree && g.degree(v) < max_degree) g.add_edge(u, v);
    }
  return g;
}

bool is_independent_set(const Graph& g, const VertexSet& s) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (g.has_edge(s[i], s[j])) return false;
  return true;
}

double mis_cost(const Graph& g, const std::vector<uint8_t>& z, double U) {
  if (int(z.size()) != g.vertex_count())
    fail(errc::invalid_argument, "mis_cost: assignment length != vertex count");
  if (!(U > g.max_degree()))
    fail(errc::invalid_argument, "mis_cost: penalty U must exceed the maximum degree");
  double c = 0;
  for (uint8_t zi : z) c -= double(zi);
  for (const auto& [u, v] : g.edges())
    if (z[size_t(u)] && z[size_t(v)]) c += U;
  return c;
}

} // namespace mis3d
