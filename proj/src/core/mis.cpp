#include "core/mis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "core/error.hpp"

namespace mis3d {
namespace {

// Word-packed vertex set, capacity fixed at construction.
struct Bits {
  std::vector<uint64_t> w;

  explicit Bits(int n) : w(size_t((n + 63) / 64), 0) {}
  void set(int i) { w[size_t(i >> 6)] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w[size_t(i >> 6)] &= ~(uint64_t(1) << (i & 63)); }
  bool test(int i) const { return (w[size_t(i >> 6)] >> (i & 63)) & 1; }
  bool empty() const {
    for (uint64_t x : w)
      if (x) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (uint64_t x : w) c += __builtin_popcountll(x);
    return c;
  }
  void and_not(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  bool subset_of_complement(const Bits& o) const { // true if disjoint from o
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return false;
    return true;
  }
  int first() const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i]) return int(i * 64) + __builtin_ctzll(w[i]);
    return -1;
  }
};

struct Solver {
  int n;
  std::vector<Bits> adj; // closed under symmetry; adj[v] excludes v itself

  explicit Solver(const Graph& g) : n(g.vertex_count()), adj(size_t(n), Bits(n)) {
    for (const auto& [u, v] : g.edges()) {
      adj[size_t(u)].set(v);
      adj[size_t(v)].set(u);
    }
  }

  int residual_degree(const Bits& p, int v) const {
    int d = 0;
    for (size_t i = 0; i < p.w.size(); ++i) d += __builtin_popcountll(p.w[i] & adj[size_t(v)].w[i]);
    return d;
  }

  // Greedy clique cover of the active set: an independent set picks at most one
  // vertex per clique, so the cover size bounds the MIS from above. Tight on
  // paths, which is what the augmented registers mostly consist of.
  int clique_cover_bound(const Bits& p) const {
    std::vector<Bits> cliques;
    for (int v = p.first(); v != -1;) {
      bool placed = false;
      for (auto& c : cliques) {
        if (c.subset_of_complement(adj[size_t(v)])) continue; // v adjacent to none
        // v must be adjacent to every member: members \ N(v) empty
        Bits rest = c;
        rest.and_not(adj[size_t(v)]);
        if (rest.empty()) {
          c.set(v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        cliques.emplace_back(n);
        cliques.back().set(v);
      }
      // advance to next active vertex after v
      int next = -1;
      for (int u = v + 1; u < n; ++u)
        if (p.test(u)) {
          next = u;
          break;
        }
      v = next;
    }
    return int(cliques.size());
  }

  int pick_branch_vertex(const Bits& p) const {
    int best = -1, bestd = -1;
    for (int v = 0; v < n; ++v)
      if (p.test(v)) {
        int d = residual_degree(p, v);
        if (d > bestd) {
          bestd = d;
          best = v;
        }
      }
    return best;
  }

  // Largest independent set size within the active set.
  int max_size(Bits p, int current, int best) {
    // Reductions: isolated and degree-1 vertices are always safe to take.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v)
        if (p.test(v)) {
          int d = residual_degree(p, v);
          if (d <= 1) {
            p.reset(v);
            p.and_not(adj[size_t(v)]);
            ++current;
            changed = true;
          }
        }
    }
    if (p.empty()) return std::max(best, current);
    if (current + clique_cover_bound(p) <= best) return best;
    int v = pick_branch_vertex(p);
    Bits take = p;
    take.reset(v);
    take.and_not(adj[size_t(v)]);
    best = max_size(take, current + 1, best);
    Bits skip = p;
    skip.reset(v);
    best = max_size(skip, current, best);
    return best;
  }

  // Does the active set contain an independent set of size >= needed?
  bool feasible(Bits p, int needed) {
    if (needed <= 0) return true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v)
        if (p.test(v) && residual_degree(p, v) <= 1) {
          p.reset(v);
          p.and_not(adj[size_t(v)]);
          if (--needed <= 0) return true;
          changed = true;
        }
    }
    if (p.empty()) return needed <= 0;
    if (clique_cover_bound(p) < needed) return false;
    int v = pick_branch_vertex(p);
    Bits take = p;
    take.reset(v);
    take.and_not(adj[size_t(v)]);
    if (feasible(take, needed - 1)) return true;
    Bits skip = p;
    skip.reset(v);
    return feasible(skip, needed);
  }
};

} // namespace

MisResult exact_mis(const Graph& g, int limit) {
  int n = g.vertex_count();
  if (n > limit)
    fail(errc::size_limit, "exact_mis: graph has " + std::to_string(n) +
                               " vertices, limit is " + std::to_string(limit));
  Solver s(g);
  Bits all(std::max(n, 1));
  for (int v = 0; v < n; ++v) all.set(v);

  int k = s.max_size(all, 0, 0);

  // Force vertices in index order; keeping v iff an optimum through the current
  // prefix still exists yields the lexicographically smallest optimal set.
  MisResult r;
  Bits p = all;
  for (int v = 0; v < n && int(r.members.size()) < k; ++v) {
    if (!p.test(v)) continue;
    Bits take = p;
    take.reset(v);
    take.and_not(s.adj[size_t(v)]);
    if (s.feasible(take, k - int(r.members.size()) - 1)) {
      r.members.push_back(v);
      p = take;
    } else {
      p.reset(v);
    }
  }
  r.size = k;
  if (int(r.members.size()) != k) fail(errc::internal, "exact_mis: reconstruction mismatch");
  return r;
}

std::vector<uint8_t> mis_pair_co_occurrence(const Graph& g) {
  int n = g.vertex_count();
  if (n > 20)
    fail(errc::size_limit, "mis_pair_co_occurrence: exhaustive, refuses n > 20");
  std::vector<uint32_t> adj(size_t(std::max(n, 1)), 0);
  for (const Edge& e : g.edges()) {
    adj[size_t(e.first)] |= uint32_t(1) << e.second;
    adj[size_t(e.second)] |= uint32_t(1) << e.first;
  }

  int best = 0;
  std::vector<uint32_t> optima{0};
  for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
    int sz = std::popcount(mask);
    if (sz < best) continue;
    bool indep = true;
    for (uint32_t rest = mask; rest; rest &= rest - 1) {
      if (adj[size_t(std::countr_zero(rest))] & mask) {
        indep = false;
        break;
      }
    }
    if (!indep) continue;
    if (sz > best) {
      best = sz;
      optima.clear();
    }
    optima.push_back(mask);
  }

  std::vector<uint8_t> co(size_t(n) * size_t(n), 0);
  for (uint32_t mask : optima) {
    for (uint32_t ra = mask; ra; ra &= ra - 1) {
      int a = std::countr_zero(ra);
      for (uint32_t rb = ra & (ra - 1); rb; rb &= rb - 1) {
        int b = std::countr_zero(rb);
        co[size_t(a) * size_t(n) + size_t(b)] = 1;
        co[size_t(b) * size_t(n) + size_t(a)] = 1;
      }
    }
  }
  return co;
}

std::vector<uint8_t> live_pair_table(const Graph& g, int exhaustive_max) {
  int n = g.vertex_count();
  if (n <= exhaustive_max && n <= 20) return mis_pair_co_occurrence(g);
  std::vector<uint8_t> co(size_t(n) * size_t(n), 1);
  for (int v = 0; v < n; ++v) co[size_t(v) * size_t(n) + size_t(v)] = 0;
  for (const Edge& e : g.edges()) {
    co[size_t(e.first) * size_t(n) + size_t(e.second)] = 0;
    co[size_t(e.second) * size_t(n) + size_t(e.first)] = 0;
  }
  return co;
}

} // namespace mis3d
