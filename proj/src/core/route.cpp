#include "core/route.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "core/error.hpp"
#include "core/mis.hpp"

namespace mis3d {

namespace {

constexpr int kMaxExtraLength = 12;     // detour allowance beyond the minimum
constexpr long kNodeBudget = 150000;    // DFS nodes per (edge, target length)

constexpr Cell kDirs[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                           {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

// A bend at arc position t places the two chain atoms that straddle it closer
// together than their along-path distance, and the resulting 1/r^6 pair energy
// lands on exactly one of the chain's two alternating occupation classes.
// When an endpoint atom is occupied, its chain is frozen into one class, so
// these bend pairs erode the energy preference for occupying that endpoint.
// The eroded margin is tracked per endpoint ("tail burden") so that path
// selection can spread it across the register instead of piling it onto one
// vertex. Burdens are measured in units of U relative to a straight chain.
struct TailBurden {
  double u = 0;   // margin eroded at the path's start vertex
  double v = 0;   // margin eroded at the path's end vertex
  int corners = 0;

  double worst(double load_u, double load_v) const {
    return std::max(load_u + u, load_v + v);
  }
};

inline double inv6(double r2) { return 1.0 / (r2 * r2 * r2); }

// Burden of one path. Odd-length paths carry atoms on the interior lattice
// points: a bend at arc t yields a sqrt(2) pair on the atoms t-1 and t+1,
// whose parity decides which endpoint pays. Even-length paths carry atoms at
// fractional arc positions i*p/(p+1); a bend at integer arc t sits between
// atoms and squeezes both straddling next-nearest pairs, one per class, by
// amounts that depend on the bend's offset within the atom grid.
TailBurden path_burden(const std::vector<Cell>& path) {
  TailBurden b;
  int p = int(path.size()) - 1;
  bool odd = p % 2 == 1;
  double s = odd ? 1.0 : double(p) / double(p + 1);
  double base = inv6(4.0 * s * s);  // straight next-nearest pair at 2s
  for (int t = 1; t < p; ++t) {
    Cell d1 = path[size_t(t)] - path[size_t(t) - 1];
    Cell d2 = path[size_t(t) + 1] - path[size_t(t)];
    if (d1 == d2) continue;
    ++b.corners;
    if (odd) {
      double pay = inv6(2.0) - base;        // sqrt(2) pair on atoms t-1, t+1
      (((t - 1) % 2 == 0) ? b.u : b.v) += pay;
    } else {
      double f = double(t) / double(p + 1); // bend offset past the atom at t*s
      double pay_a = inv6(f * f + (2 * s - f) * (2 * s - f)) - base;
      double pay_b = inv6(2.0 * (s * s + f * f)) - base;
      ((t % 2 == 0) ? b.u : b.v) += pay_a;  // pair (t, t+2), class parity(t)
      ((t % 2 == 1) ? b.u : b.v) += pay_b;  // pair (t-1, t+1), parity(t+1)
    }
  }
  return b;
}

// A frozen endpoint also couples directly to the second atom of each of its
// chains (distance 2s); this load exists for straight chains too and biases
// the balance toward vertices with fewer or odd-spaced chains.
double direct_coupling(int p) {
  double s = p % 2 == 1 ? 1.0 : double(p) / double(p + 1);
  return inv6(4.0 * s * s);
}

// Chains meeting at a vertex put their innermost ancillas on neighbouring
// lattice cells, inside the two-cell clearance kept everywhere else. Those
// ancillas are occupied exactly when their chain's far endpoint is, so each
// close pair acts as a stray coupling between two original vertices. If the
// far endpoints can never be occupied together (adjacent, or just never both
// in an optimal set) the pair costs nothing; otherwise the pair energy erodes
// both far endpoints' occupation margin, and the only lever is direction:
// opposite fan-out directions give a two-cell pair (U/64), perpendicular ones
// a diagonal pair (U/8, ruinous). The search prices this like corner burden.
struct FanSite {
  Vec3 pos;  // the sibling chain's ancilla nearest the shared vertex
  int far;   // that chain's other endpoint (original vertex id)
};
using FanMap = std::unordered_map<Cell, std::vector<FanSite>, CellHash>;

// Occupancy values for routed cells.
enum : uint8_t { kVertexCell = 1, kPathCell = 2 };

using OccMap = std::unordered_map<Cell, uint8_t, CellHash>;

struct PathSearch {
  const OccMap* occ = nullptr;
  const uint8_t* live = nullptr;  // n*n pair co-occupancy table
  int live_n = 0;
  const std::vector<FanSite>* fan_u = nullptr;  // siblings fanned out of eu
  const std::vector<FanSite>* fan_v = nullptr;  // ... and out of ev
  Cell eu{}, ev{};
  int uid = -1, vid = -1;  // original vertex ids behind eu / ev
  int p_target = 0;
  double spacing = 1.0;  // ancilla spacing for the current target length
  bool even_mode = false;
  bool no_corners = false;  // short even chains must run straight
  // Feasibility mode, used for long displacements: stop at the first
  // admissible path instead of searching the whole slack ellipsoid for the
  // lowest burden, and memoize provably empty subtrees. Without the memo a
  // crowded arrival window is rediscovered once per monotone staircase,
  // which is exponential in the displacement.
  bool feas_only = false;
  std::unordered_set<uint64_t>* dead = nullptr;
  mutable size_t self_hits = 0;  // clears_own_path rejections (history-bound)
  long nodes = 0;
  double load_u = 0, load_v = 0;  // burden already carried by the endpoints

  std::vector<Cell> path;     // path[0] == eu
  std::vector<int> step_dir;  // step_dir[k] = direction of step k+1
  int last_corner = -1000;
  TailBurden partial;         // burden of corners committed so far

  std::vector<Cell> best_path;
  TailBurden best;
  bool have_best = false;
  bool done = false;

  // du/dv cost of a corner at arc position t, for the current target length.
  void corner_pay(int t, double* du, double* dv) const {
    *du = *dv = 0;
    if (p_target % 2 == 1) {
      double pay = inv6(2.0) - inv6(4.0);
      *((t % 2 == 1) ? du : dv) = pay;
      return;
    }
    double s = double(p_target) / double(p_target + 1);
    double base = inv6(4.0 * s * s);
    double f = double(t) / double(p_target + 1);
    double pay_a = inv6(f * f + (2 * s - f) * (2 * s - f)) - base;
    double pay_b = inv6(2.0 * (s * s + f * f)) - base;
    *((t % 2 == 0) ? du : dv) += pay_a;
    *((t % 2 == 1) ? du : dv) += pay_b;
  }

  // Chargeable pair energy between this chain's ancilla next to `from` (one
  // spacing along the step) and the sibling ancillas already fanned out of
  // that cell. `own_far` is the endpoint whose occupation freezes that
  // ancilla: the charge belongs on its side of the burden.
  double fan_charge(const std::vector<FanSite>* fans, const Cell& from,
                    const Cell& step_to, int own_far) const {
    if (!fans || fans->empty()) return 0;
    Vec3 a = from.to_vec() + (step_to - from).to_vec() * spacing;
    double sum = 0;
    for (const FanSite& f : *fans) {
      if (!live[size_t(f.far) * size_t(live_n) + size_t(own_far)]) continue;
      sum += inv6((a - f.pos).norm2());
    }
    return sum;
  }

  // Sibling ancillas at a shared vertex still owe the 1.25 clearance that
  // applies within a chain family. Perpendicular exits clear it only when
  // both spacings are large enough (unit-spaced odd chains always do, short
  // even chains never), so a step that would land the inner ancilla too close
  // to an already placed sibling is inadmissible outright.
  bool fan_clear(const std::vector<FanSite>* fans, const Cell& from,
                 const Cell& step_to) const {
    if (!fans || fans->empty()) return true;
    Vec3 a = from.to_vec() + (step_to - from).to_vec() * spacing;
    for (const FanSite& f : *fans) {
      if ((a - f.pos).norm2() < 1.25 * 1.25 - 1e-12) return false;
    }
    return true;
  }

  // Lexicographic candidate comparison: resulting worst endpoint load, then
  // total burden, then bend count. Strict improvement keeps the first path
  // found among ties, which the deterministic DFS order fixes.
  bool better(const TailBurden& a, const TailBurden& b) const {
    double wa = a.worst(load_u, load_v), wb = b.worst(load_u, load_v);
    if (wa != wb) return wa < wb;
    if (a.u + a.v != b.u + b.v) return a.u + a.v < b.u + b.v;
    return a.corners < b.corners;
  }

  // May the path pass through w as the t-th cell? Transit cells stay clear of
  // everything previously placed, with two exceptions near the path's own
  // endpoints: the first (last) step is allowed next to its endpoint and next
  // to sibling fan-out cells that touch the same endpoint. Atom pairs created
  // by those exceptions are separated by at least sqrt(2) times the chain
  // spacing, which stays above the blockade radius.
  bool transit_blocked(const Cell& w, int t) const {
    if (occ->count(w)) return true;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          Cell q{w.x + dx, w.y + dy, w.z + dz};
          if (q == eu) {
            if (t != 1) return true;
            continue;
          }
          if (q == ev) {
            if (t != p_target - 1) return true;
            continue;
          }
          auto it = occ->find(q);
          if (it == occ->end()) continue;
          if (it->second == kVertexCell) return true;
          bool exempt =
              (t == 1 && l1(w, eu) == 1 && l1(q, eu) == 1) ||
              (t == p_target - 1 && l1(w, ev) == 1 && l1(q, ev) == 1);
          if (!exempt) return true;
        }
      }
    }
    return false;
  }

  // w must keep L1 distance >= 2 from every path cell except its predecessor.
  bool clears_own_path(const Cell& w) const {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      if (l1(path[i], w) <= 1) {
        ++self_hits;
        return false;
      }
    }
    return true;
  }

  // A subtree's admissibility depends on (cell, remaining, incoming
  // direction, corner-on-previous-step) except through clears_own_path,
  // which sees the whole prefix. Subtrees that failed without a single
  // self-clearance rejection are therefore dead for every prefix and safe
  // to memoize. Coordinates are packed relative to the goal.
  bool memo_key(const Cell& cur, int t, uint64_t* key) const {
    long dx = long(cur.x) - long(ev.x) + 2048;
    long dy = long(cur.y) - long(ev.y) + 2048;
    long dz = long(cur.z) - long(ev.z) + 2048;
    if ((dx | dy | dz) & ~4095L) return false;
    uint64_t rc = last_corner == t - 1 ? 1 : 0;
    *key = uint64_t(dx) | uint64_t(dy) << 12 | uint64_t(dz) << 24 |
           uint64_t(p_target - t) << 36 |
           uint64_t(step_dir[size_t(t) - 1]) << 43 | rc << 46;
    return true;
  }

  void dfs(int t) {
    if (done || ++nodes > kNodeBudget) return;
    const Cell& cur = path[size_t(t)];
    int remaining = p_target - t;

    uint64_t key = 0;
    bool memo = dead != nullptr && t >= 1 && memo_key(cur, t, &key);
    if (memo && dead->count(key)) return;
    size_t entry_hits = self_hits;

    struct Cand {
      int key;
      int di;
      Cell w;
    };
    Cand cands[6];
    int nc = 0;
    for (int di = 0; di < 6; ++di) {
      Cell w = cur + kDirs[di];
      int gd = l1(w, ev);
      if (gd > remaining - 1) continue;  // cannot reach the goal in time
      // Goal distance first, then straight continuation. Preferring long
      // straight runs keeps early corners away from the crowded endpoint
      // neighbourhoods, where a parked corner cell would wall off the last
      // free exits of a high-degree vertex.
      bool straight = t >= 1 && di == step_dir[size_t(t) - 1];
      int key = gd * 2 + (straight ? 0 : 1);
      // insertion keeps (key, di) order; di is already ascending
      int at = nc++;
      while (at > 0 && cands[at - 1].key > key) {
        cands[at] = cands[at - 1];
        --at;
      }
      cands[at] = {key, di, w};
    }

    for (int c = 0; c < nc && !done; ++c) {
      const Cand& cd = cands[c];
      bool corner = t >= 1 && cd.di != step_dir[size_t(t) - 1];
      double du = 0, dv = 0;
      if (corner) {
        if (no_corners) continue;
        if (t == 1 || t == p_target - 1) continue;
        if (even_mode && last_corner == t - 1) continue;
        corner_pay(t, &du, &dv);
      }
      if (t == 0) {
        if (!fan_clear(fan_u, eu, cd.w)) continue;
        dv += fan_charge(fan_u, eu, cd.w, vid);
      }
      if ((du != 0 || dv != 0) && have_best) {
        // committed burden can only grow; prune on the primary criterion
        double w = std::max(load_u + partial.u + du, load_v + partial.v + dv);
        if (w > best.worst(load_u, load_v)) continue;
      }
      if (cd.w == ev) {
        if (t + 1 != p_target) continue;  // may not pass through the goal
        if (!clears_own_path(cd.w)) continue;
        if (!fan_clear(fan_v, ev, path[size_t(t)])) continue;
        path.push_back(cd.w);
        TailBurden cand = path_burden(path);
        cand.v += fan_charge(fan_u, eu, path[1], vid);
        cand.u += fan_charge(fan_v, ev, path[size_t(p_target) - 1], uid);
        if (!have_best || better(cand, best)) {
          best = cand;
          best_path = path;
          have_best = true;
          if (feas_only || cand.u + cand.v <= 0) done = true;
        }
        path.pop_back();
        continue;
      }
      if (t + 1 == p_target) continue;  // final step must land on the goal
      if (!clears_own_path(cd.w)) continue;
      if (transit_blocked(cd.w, t + 1)) continue;

      int saved_corner = last_corner;
      if (corner) {
        last_corner = t;
        ++partial.corners;
      }
      partial.u += du;
      partial.v += dv;
      path.push_back(cd.w);
      step_dir.push_back(cd.di);
      dfs(t + 1);
      path.pop_back();
      step_dir.pop_back();
      last_corner = saved_corner;
      partial.u -= du;
      partial.v -= dv;
      if (corner) --partial.corners;
    }

    if (memo && !done && nodes <= kNodeBudget && self_hits == entry_hits) {
      dead->insert(key);
    }
  }
};

std::vector<Cell> route_one(const OccMap& occ, const FanMap& fans,
                            const std::vector<uint8_t>& live, int live_n,
                            int uid, int vid, const Cell& eu, const Cell& ev,
                            int edge_id, double load_u, double load_v,
                            TailBurden* burden_out) {
  int d = l1(eu, ev);
  if (d < 3) {
    fail(errc::internal, "edge " + std::to_string(edge_id) +
                             ": endpoint cells closer than the grid clearance");
  }
  auto fu = fans.find(eu);
  auto fv = fans.find(ev);
  bool even = d % 2 == 0;
  // Even lengths below 8 are allowed only dead straight: their sub-unit
  // spacing leaves no corner geometry with acceptable clearances. Such a
  // length can only succeed when the displacement is a straight axis run, so
  // the shorter attempts cost next to nothing when they fail.
  for (int p = d; p <= d + kMaxExtraLength; p += 2) {
    PathSearch s;
    s.occ = &occ;
    s.live = live.data();
    s.live_n = live_n;
    s.fan_u = fu == fans.end() ? nullptr : &fu->second;
    s.fan_v = fv == fans.end() ? nullptr : &fv->second;
    s.eu = eu;
    s.ev = ev;
    s.uid = uid;
    s.vid = vid;
    s.p_target = p;
    s.spacing = p % 2 == 1 ? 1.0 : double(p) / double(p + 1);
    s.even_mode = even;
    s.no_corners = even && p < 8;
    s.load_u = load_u;
    s.load_v = load_v;
    s.path.push_back(eu);
    s.dfs(0);
    if (s.have_best) {
      if (burden_out) *burden_out = s.best;
      return s.best_path;
    }
  }
  if (getenv("MIS3D_ROUTE_DEBUG")) {
    fprintf(stderr, "route_one FAIL edge=%d d=%d eu=(%d,%d,%d) ev=(%d,%d,%d) fanu=%zu fanv=%zu\n",
            edge_id, d, eu.x, eu.y, eu.z, ev.x, ev.y, ev.z,
            fu == fans.end() ? 0 : fu->second.size(),
            fv == fans.end() ? 0 : fv->second.size());
    PathSearch s;
    s.occ = &occ; s.live = live.data(); s.live_n = live_n;
    s.fan_u = fu == fans.end() ? nullptr : &fu->second;
    s.fan_v = fv == fans.end() ? nullptr : &fv->second;
    s.eu = eu; s.ev = ev; s.uid = uid; s.vid = vid;
    s.p_target = d;
    s.spacing = d % 2 == 1 ? 1.0 : double(d) / double(d + 1);
    s.even_mode = d % 2 == 0;
    s.no_corners = s.even_mode && d < 8;
    for (int di = 0; di < 6; ++di) {
      Cell w = eu + kDirs[di];
      fprintf(stderr, "  dir %d: gd=%d fan_clear=%d occ=%d transit=%d\n", di,
              l1(w, ev), int(s.fan_clear(s.fan_u, eu, w)), int(occ.count(w)),
              int(s.transit_blocked(w, 1)));
    }
    s.path.push_back(eu);
    s.dfs(0);
    fprintf(stderr, "  p=%d nodes=%ld have_best=%d\n", d, s.nodes, int(s.have_best));
  }
  fail(errc::routing, "edge " + std::to_string(edge_id) +
                          ": no admissible lattice path up to length " +
                          std::to_string(d + kMaxExtraLength));
}

} // namespace

std::vector<RoutedEdge> route_edges(const Graph& g, const LatticeLayout& l) {
  if (int(l.cells.size()) != g.vertex_count()) {
    fail(errc::invalid_argument, "layout size does not match the graph");
  }
  const auto& edges = g.edges();

  OccMap occ;
  occ.reserve(l.cells.size() * 4);
  for (const Cell& c : l.cells) occ[c] = kVertexCell;

  // Edges with the fewest routing options go first. Axis-aligned even
  // displacements lead: below length eight their only clean route is the one
  // dead-straight corridor, which another chain must not steal. After those,
  // shortest edges first: a short chain's exit directions are essentially
  // dictated by the placement, while a long chain routed afterwards can still
  // pick its first and last steps to dodge the fan-out pairs already placed.
  // Ties resolve by edge id for determinism.
  std::vector<int> order(edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  auto rank = [&](int e) {
    const Cell& a = l.cells[size_t(edges[size_t(e)].first)];
    const Cell& b = l.cells[size_t(edges[size_t(e)].second)];
    int d = l1(a, b);
    int nz = (a.x != b.x) + (a.y != b.y) + (a.z != b.z);
    bool rigid = d % 2 == 0 && nz == 1;
    return std::make_pair(rigid ? 0 : 1, d);
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a < b;
  });

  std::vector<RoutedEdge> routes;
  routes.reserve(edges.size());
  const int n = g.vertex_count();
  const std::vector<uint8_t> live = live_pair_table(g);
  std::vector<double> load(size_t(n), 0.0);
  FanMap fans;
  // Mirror half of a placed chain's fan-out pairs: the siblings' far
  // endpoints carry the same pair energy on their own ledgers.
  auto settle_fans = [&](const Cell& at, const Vec3& anc, int own_far) {
    auto it = fans.find(at);
    if (it == fans.end()) return;
    for (const FanSite& f : it->second) {
      if (!live[size_t(f.far) * size_t(n) + size_t(own_far)]) continue;
      load[size_t(f.far)] += inv6((anc - f.pos).norm2());
    }
  };
  for (int id : order) {
    RoutedEdge r;
    r.u = edges[size_t(id)].first;
    r.v = edges[size_t(id)].second;
    r.edge_id = id;
    TailBurden b;
    r.waypoints = route_one(occ, fans, live, n, r.u, r.v, l.cells[size_t(r.u)],
                            l.cells[size_t(r.v)], id, load[size_t(r.u)],
                            load[size_t(r.v)], &b);
    int p = int(r.waypoints.size()) - 1;
    load[size_t(r.u)] += b.u + direct_coupling(p);
    load[size_t(r.v)] += b.v + direct_coupling(p);
    r.ancillas = place_ancillas(r.waypoints, &r.spacing);
    settle_fans(r.waypoints.front(), r.ancillas.front(), r.v);
    settle_fans(r.waypoints.back(), r.ancillas.back(), r.u);
    fans[r.waypoints.front()].push_back({r.ancillas.front(), r.v});
    fans[r.waypoints.back()].push_back({r.ancillas.back(), r.u});
    for (size_t i = 1; i + 1 < r.waypoints.size(); ++i) {
      occ[r.waypoints[i]] = kPathCell;
    }
    routes.push_back(std::move(r));
  }
  return routes;
}

std::vector<Vec3> place_ancillas(const std::vector<Cell>& waypoints,
                                 double* spacing_out) {
  int p = int(waypoints.size()) - 1;
  if (p < 2) {
    fail(errc::invalid_argument,
         "ancilla placement needs a path of length >= 2, got " +
             std::to_string(std::max(p, 0)));
  }
  for (int i = 0; i < p; ++i) {
    if (l1(waypoints[size_t(i)], waypoints[size_t(i) + 1]) != 1) {
      fail(errc::invalid_argument, "waypoints are not a unit lattice path");
    }
  }

  std::vector<Vec3> out;
  if (p % 2 == 1) {
    // Odd length: the p-1 interior lattice points, unit spacing.
    out.reserve(size_t(p) - 1);
    for (int i = 1; i < p; ++i) out.push_back(waypoints[size_t(i)].to_vec());
    if (spacing_out) *spacing_out = 1.0;
    return out;
  }

  // Even length: p ancillas at arc positions i * p/(p+1). None of these is a
  // lattice point, so every ancilla sits strictly inside a segment.
  double s = double(p) / double(p + 1);
  out.reserve(size_t(p));
  for (int i = 1; i <= p; ++i) {
    double arc = double(i) * s;
    int seg = std::min(int(std::floor(arc)), p - 1);
    double frac = arc - double(seg);
    Vec3 a = waypoints[size_t(seg)].to_vec();
    Vec3 b = waypoints[size_t(seg) + 1].to_vec();
    out.push_back(a + (b - a) * frac);
  }
  if (spacing_out) *spacing_out = s;
  return out;
}

namespace {

// Post-hoc geometric audit of the whole atom set. The router's rules are
// supposed to guarantee these margins; if they ever fail, the embedding must
// not be certified, so this raises instead of warning.
void check_clearances(const Graph& g, const AugmentedGraph& aug) {
  int n = aug.total_atoms();

  // chain id per ancilla; originals listed per incident edge
  std::vector<int> anc_chain(size_t(n), -1);
  for (const AugChain& c : aug.chains) {
    for (size_t i = 1; i + 1 < c.atoms.size(); ++i) {
      anc_chain[size_t(c.atoms[i])] = c.edge_id;
    }
  }
  const auto& edges = g.edges();

  auto same_chain = [&](int a, int b) {
    bool aa = aug.kind[size_t(a)] == 1, ab = aug.kind[size_t(b)] == 1;
    if (aa && ab) return anc_chain[size_t(a)] == anc_chain[size_t(b)];
    if (!aa && !ab) return g.has_edge(a, b);
    int anc = aa ? a : b, orig = aa ? b : a;
    const Edge& e = edges[size_t(anc_chain[size_t(anc)])];
    return e.first == orig || e.second == orig;
  };
  auto chains_touch = [&](int a, int b) {
    // both ancillas, different chains: do the parent edges share a vertex?
    const Edge& ea = edges[size_t(anc_chain[size_t(a)])];
    const Edge& eb = edges[size_t(anc_chain[size_t(b)])];
    return ea.first == eb.first || ea.first == eb.second ||
           ea.second == eb.first || ea.second == eb.second;
  };

  // consecutive-in-chain pairs are the intended blockade edges; skip them
  std::vector<std::pair<int, int>> chain_pairs;
  for (const AugChain& c : aug.chains) {
    for (size_t i = 0; i + 1 < c.atoms.size(); ++i) {
      int a = c.atoms[i], b = c.atoms[i + 1];
      chain_pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(chain_pairs.begin(), chain_pairs.end());

  const double kNearMin = 1.25;         // same chain or shared endpoint
  const double kFarMin = 1.3 - 1e-9;    // unrelated chains
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double d = dist(aug.pos[size_t(a)], aug.pos[size_t(b)]);
      if (d < 1e-9) {
        fail(errc::inconsistent, "coincident atoms " + std::to_string(a) +
                                     " and " + std::to_string(b));
      }
      if (std::binary_search(chain_pairs.begin(), chain_pairs.end(),
                             std::make_pair(a, b))) {
        continue;
      }
      double need;
      if (same_chain(a, b)) {
        need = kNearMin;
      } else if (aug.kind[size_t(a)] == 1 && aug.kind[size_t(b)] == 1 &&
                 chains_touch(a, b)) {
        need = kNearMin;
      } else {
        need = kFarMin;
      }
      if (d < need) {
        fail(errc::inconsistent,
             "atoms " + std::to_string(a) + " and " + std::to_string(b) +
                 " are " + std::to_string(d) + " apart, need >= " +
                 std::to_string(need));
      }
    }
  }
}

} // namespace

AugmentedGraph build_augmented_graph(const Graph& g, const LatticeLayout& l,
                                     const std::vector<RoutedEdge>& routes) {
  int n = g.vertex_count();
  const auto& edges = g.edges();
  if (routes.size() != edges.size()) {
    fail(errc::invalid_argument, "route count does not match the edge count");
  }
  std::vector<int> by_edge(edges.size(), -1);
  for (size_t i = 0; i < routes.size(); ++i) {
    int id = routes[i].edge_id;
    if (id < 0 || size_t(id) >= edges.size() || by_edge[size_t(id)] != -1) {
      fail(errc::invalid_argument, "bad or duplicate edge id in routes");
    }
    by_edge[size_t(id)] = int(i);
  }

  AugmentedGraph aug;
  aug.n_original = n;
  aug.pos.reserve(size_t(n));
  for (int v = 0; v < n; ++v) {
    aug.pos.push_back(l.cells[size_t(v)].to_vec());
    aug.kind.push_back(0);
    aug.source.push_back(v);
  }

  for (size_t e = 0; e < edges.size(); ++e) {
    const RoutedEdge& r = routes[size_t(by_edge[e])];
    if (r.u != edges[e].first || r.v != edges[e].second ||
        r.waypoints.front() != l.cells[size_t(r.u)] ||
        r.waypoints.back() != l.cells[size_t(r.v)]) {
      fail(errc::inconsistent, "route does not connect its edge's cells");
    }
    if (r.ancillas.size() % 2 != 0) {
      fail(errc::inconsistent,
           "edge " + std::to_string(e) + ": odd ancilla count " +
               std::to_string(r.ancillas.size()));
    }
    AugChain c;
    c.u = r.u;
    c.v = r.v;
    c.edge_id = int(e);
    c.spacing = r.spacing;
    c.atoms.push_back(r.u);
    for (const Vec3& a : r.ancillas) {
      c.atoms.push_back(int(aug.pos.size()));
      aug.pos.push_back(a);
      aug.kind.push_back(1);
      aug.source.push_back(int(e));
    }
    c.atoms.push_back(r.v);
    aug.chains.push_back(std::move(c));
  }

  check_clearances(g, aug);
  return aug;
}

Graph chain_graph(const AugmentedGraph& aug) {
  Graph g(aug.total_atoms());
  for (const AugChain& c : aug.chains) {
    for (size_t i = 0; i + 1 < c.atoms.size(); ++i) {
      g.add_edge(c.atoms[i], c.atoms[i + 1]);
    }
  }
  return g;
}

} // namespace mis3d
