#include "core/layout.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/mis.hpp"
#include "core/rng.hpp"

namespace mis3d {

std::vector<Vec3> fruchterman_reingold_3d(const Graph& g, const FrParams& params) {
  int n = g.vertex_count();
  if (n == 0) return {};
  if (params.iterations < 1) fail(errc::invalid_argument, "layout: need at least one iteration");

  const double k = 1.0;
  const double side = std::cbrt(double(n));
  Rng rng(params.seed);
  auto pos = std::vector<Vec3>(size_t(n));
  for (auto& p : pos) p = {rng.uniform(0, side), rng.uniform(0, side), rng.uniform(0, side)};
  if (n == 1) return pos;

  auto disp = std::vector<Vec3>(size_t(n));
  const double t0 = 0.1 * side;
  for (int it = 0; it < params.iterations; ++it) {
    double t = t0 * (1.0 - double(it) / double(params.iterations));
    for (auto& d : disp) d = {0, 0, 0};
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        Vec3 delta = pos[size_t(u)] - pos[size_t(v)];
        double d = delta.norm();
        if (d < 1e-9) {
          // Coincident points repel along a deterministic pseudo-direction.
          double a = 0.12 + 0.17 * u, b = 0.31 + 0.07 * v;
          delta = {std::cos(a) * std::sin(b), std::sin(a) * std::sin(b), std::cos(b)};
          d = 1e-9;
        }
        Vec3 f = delta * (k * k / (d * d)); // (k^2/d) * unit vector
        disp[size_t(u)] += f;
        disp[size_t(v)] += f * -1.0;
      }
    for (const auto& [u, v] : g.edges()) {
      Vec3 delta = pos[size_t(u)] - pos[size_t(v)];
      double d = delta.norm();
      if (d < 1e-9) continue; // attraction has no direction at zero distance
      Vec3 f = delta * (d / k); // (d^2/k) * unit vector
      disp[size_t(u)] += f * -1.0;
      disp[size_t(v)] += f;
    }
    for (int v = 0; v < n; ++v) {
      double d = disp[size_t(v)].norm();
      if (d < 1e-12) continue;
      pos[size_t(v)] += disp[size_t(v)] * (std::min(d, t) / d);
    }
  }
  return pos;
}

namespace {

bool admissible(const std::vector<Cell>& placed, const Cell& c, int clearance) {
  for (const auto& p : placed)
    if (chebyshev(p, c) < clearance) return false;
  return true;
}

// First admissible cell on the Chebyshev shell of radius r around `center`,
// visiting cells in lexicographic (x,y,z) order. Returns false if the shell is
// exhausted.
bool probe_shell(const std::vector<Cell>& placed, const Cell& center, int r, int clearance,
                 Cell& out) {
  for (int dx = -r; dx <= r; ++dx)
    for (int dy = -r; dy <= r; ++dy)
      for (int dz = -r; dz <= r; ++dz) {
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) continue;
        Cell c{center.x + dx, center.y + dy, center.z + dz};
        if (admissible(placed, c, clearance)) {
          out = c;
          return true;
        }
      }
  return false;
}

} // namespace

LatticeLayout snap_to_grid(const std::vector<Vec3>& layout, int scale) {
  if (scale < 3) fail(errc::invalid_argument, "snap_to_grid: scale must be at least 3");
  int n = int(layout.size());
  LatticeLayout out;
  out.cells.reserve(size_t(n));
  if (n == 0) return out;
  const int clearance = scale;

  // Idempotence: an already-snapped layout comes back unchanged.
  {
    bool integral = true;
    std::vector<Cell> cells;
    cells.reserve(size_t(n));
    for (const auto& p : layout) {
      Cell c{int(std::lround(p.x)), int(std::lround(p.y)), int(std::lround(p.z))};
      if (std::abs(p.x - c.x) > 1e-9 || std::abs(p.y - c.y) > 1e-9 || std::abs(p.z - c.z) > 1e-9) {
        integral = false;
        break;
      }
      cells.push_back(c);
    }
    if (integral) {
      bool clear = true;
      for (int i = 0; i < n && clear; ++i)
        for (int j = i + 1; j < n; ++j)
          if (chebyshev(cells[size_t(i)], cells[size_t(j)]) < clearance) {
            clear = false;
            break;
          }
      if (clear) {
        out.cells = std::move(cells);
        return out;
      }
    }
  }

  Vec3 lo = layout[0], hi = layout[0];
  for (const auto& p : layout) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  double extent = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  double grid = double(scale) * std::ceil(std::cbrt(double(n)));
  double f = extent > 1e-12 ? grid / extent : 0.0;

  for (int i = 0; i < n; ++i) {
    Vec3 q = (layout[size_t(i)] - lo) * f;
    Cell target{int(std::lround(q.x)), int(std::lround(q.y)), int(std::lround(q.z))};
    if (admissible(out.cells, target, clearance)) {
      out.cells.push_back(target);
      continue;
    }
    Cell found{};
    bool ok = false;
    for (int r = 1; !ok; ++r) {
      ok = probe_shell(out.cells, target, r, clearance, found);
      if (r > 8 * (scale + n)) fail(errc::internal, "snap_to_grid: shell probe ran away");
    }
    out.cells.push_back(found);
  }
  return out;
}

namespace {

// Routing friendliness of one edge's displacement. Short L1 keeps chains
// short; every extra nonzero axis forces at least one bend; an even L1 must
// either run dead straight along an axis (slightly lossier spacing) or snake
// out to length eight or more, which loads both endpoints heavily, so the
// non-axis even case is priced high enough that the search treats it as a
// last resort.
int edge_cost(const Cell& a, const Cell& b) {
  int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y),
      dz = std::abs(a.z - b.z);
  int L = dx + dy + dz;
  int nz = (dx > 0) + (dy > 0) + (dz > 0);
  int c = L + 4 * (nz - 1);
  if (L % 2 == 0) c += (nz == 1 && L >= 4) ? 2 : 40;
  return c;
}

bool axis_aligned(const Cell& a, const Cell& b) {
  return ((a.x != b.x) + (a.y != b.y) + (a.z != b.z)) == 1;
}

// Direction (axis and sign, encoded 0..5) an edge most likely leaves u with:
// the dominant axis of the displacement toward w.
int leave_dir(const Cell& u, const Cell& w) {
  Cell d = w - u;
  int ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
  if (ax >= ay && ax >= az) return d.x > 0 ? 0 : 1;
  if (ay >= az) return d.y > 0 ? 2 : 3;
  return d.z > 0 ? 4 : 5;
}

// Chains that leave a shared vertex in non-opposite directions put their
// innermost ancillas about a cell diagonal apart, coupling the two far
// endpoints whenever those can be occupied together. Placement decides which
// pairs can run opposite, so the penalty lands here rather than in the router,
// which only picks among the directions placement left open.
double fan_pair_estimate(int da, int db) {
  if (da == db) return 0.18;              // same exit: one chain bends at once
  if ((da ^ 1) == db) return 1.0 / 64.0;  // opposite exits, two cells apart
  return 0.125;                           // perpendicular exits, cell diagonal
}

// Estimated stray coupling each vertex absorbs from fan-out at its neighbors,
// plus the direct chain-end tail per incident edge. At degree three and up
// some diagonal pairs are unavoidable, so counting pairs is not enough: what
// certification needs is every vertex's total staying under the detuning
// headroom. Only pairs whose far endpoints can be simultaneously occupied
// matter; the rest never pin both inner ancillas at once. Overload past the
// headroom is priced steeply, the mild linear term just spreads the rest.
double fan_load_cost(const Graph& g, const std::vector<Cell>& cells,
                     const std::vector<uint8_t>& co) {
  int n = g.vertex_count();
  double c = 0;
  std::vector<double> load(size_t(n), 0.0);
  for (int v = 0; v < n; ++v)
    load[size_t(v)] = double(g.neighbors(v).size()) / 64.0;
  for (int u = 0; u < n; ++u) {
    const auto& nb = g.neighbors(u);
    for (size_t i = 0; i < nb.size(); ++i) {
      for (size_t j = i + 1; j < nb.size(); ++j) {
        int a = nb[i], b = nb[j];
        int da = leave_dir(cells[size_t(u)], cells[size_t(a)]);
        int db = leave_dir(cells[size_t(u)], cells[size_t(b)]);
        // Two even-length chains cannot exit perpendicular at all: their
        // sub-unit inner spacings land the ancilla pair under the clearance
        // floor, so the router will refuse this shape outright.
        if (da != db && (da ^ 1) != db &&
            l1(cells[size_t(u)], cells[size_t(a)]) % 2 == 0 &&
            l1(cells[size_t(u)], cells[size_t(b)]) % 2 == 0) {
          c += 200.0;
        }
        if (!co[size_t(a) * size_t(n) + size_t(b)]) continue;
        double w = fan_pair_estimate(da, db);
        load[size_t(a)] += w;
        load[size_t(b)] += w;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    c += 3.0 * load[size_t(v)];
    c += 900.0 * std::max(0.0, load[size_t(v)] - 0.28);
  }
  return c;
}

// Does some third vertex sit within Chebyshev 1 of the straight corridor's
// interior? Routing inflates vertex cells by one, so such a corridor cannot
// carry the edge dead straight.
bool corridor_blocked(const std::vector<Cell>& cells, int u, int v) {
  const Cell &a = cells[size_t(u)], &b = cells[size_t(v)];
  Cell step{(b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y),
            (b.z > a.z) - (b.z < a.z)};
  Cell cur = a;
  for (;;) {
    cur = cur + step;
    if (cur == b) return false;
    for (size_t w = 0; w < cells.size(); ++w) {
      if (int(w) == u || int(w) == v) continue;
      if (chebyshev(cells[w], cur) <= 1) return true;
    }
  }
}

} // namespace

LatticeLayout compact_lattice_layout(const Graph& g, int scale, uint64_t seed) {
  if (scale < 3) fail(errc::invalid_argument, "layout: scale must be at least 3");
  int n = g.vertex_count();
  LatticeLayout out;
  if (n == 0) return out;
  out.cells.assign(size_t(n), Cell{});
  if (n == 1) return out;

  // Greedy seed on the pitch-scale sublattice, breadth-first from the highest
  // degree vertex, so most neighbors start in adjacent slots already.
  int m = int(std::ceil(std::cbrt(double(n)))) + 1;
  std::vector<int> order;
  order.reserve(size_t(n));
  {
    std::vector<char> seen(size_t(n), 0);
    for (;;) {
      int root = -1;
      for (int v = 0; v < n; ++v) {
        if (!seen[size_t(v)] &&
            (root < 0 ||
             g.neighbors(v).size() > g.neighbors(root).size())) {
          root = v;
        }
      }
      if (root < 0) break;
      seen[size_t(root)] = 1;
      order.push_back(root);
      for (size_t head = order.size() - 1; head < order.size(); ++head) {
        for (int w : g.neighbors(order[head])) {
          if (!seen[size_t(w)]) {
            seen[size_t(w)] = 1;
            order.push_back(w);
          }
        }
      }
    }
  }

  std::vector<char> placed(size_t(n), 0);
  std::vector<Cell> slots;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        slots.push_back(Cell{x * scale, y * scale, z * scale});
  Cell center{scale * (m - 1) / 2, scale * (m - 1) / 2, scale * (m - 1) / 2};
  std::vector<char> slot_used(slots.size(), 0);
  for (int v : order) {
    long best = -1;
    size_t pick = 0;
    for (size_t s = 0; s < slots.size(); ++s) {
      if (slot_used[s]) continue;
      long c = 0;
      bool any = false;
      for (int w : g.neighbors(v)) {
        if (!placed[size_t(w)]) continue;
        any = true;
        c += edge_cost(slots[s], out.cells[size_t(w)]);
      }
      if (!any) c = l1(slots[s], center);
      if (best < 0 || c < best) {
        best = c;
        pick = s;
      }
    }
    slot_used[pick] = 1;
    out.cells[size_t(v)] = slots[pick];
    placed[size_t(v)] = 1;
  }

  // Which far-endpoint pairs can ever be simultaneously occupied.
  std::vector<uint8_t> co = live_pair_table(g);

  // Annealing over single-vertex moves inside the box; the pairwise clearance
  // stays a hard constraint throughout. Moves are scored on the full
  // objective: displacement cost per edge, a corridor term for axis-aligned
  // edges whose straight run a third vertex blocks (fatal for even edges, a
  // mild detour for odd ones), and the fan-out load term. The graphs are
  // small, so a from-scratch evaluation per move is affordable and simple.
  const int B = scale * m + 1;
  auto clamp_box = [&](int c) { return std::max(0, std::min(B - 1, c)); };
  auto total_cost = [&]() {
    double c = 0;
    for (const Edge& e : g.edges()) {
      const Cell &a = out.cells[size_t(e.first)],
                 &b = out.cells[size_t(e.second)];
      c += edge_cost(a, b);
      if (axis_aligned(a, b) && corridor_blocked(out.cells, e.first, e.second)) {
        c += l1(a, b) % 2 == 0 ? 30 : 8;
      }
    }
    c += fan_load_cost(g, out.cells, co);
    return c;
  };
  double cur_total = total_cost();
  std::vector<Cell> best_cells = out.cells;
  double best_total = cur_total;

  Rng rng(seed);
  const int iters = 10000 + 4000 * n;
  const double t0 = 6.0, t1 = 0.02;
  for (int it = 0; it < iters; ++it) {
    double temp = t0 * std::pow(t1 / t0, double(it) / double(iters - 1));
    int v = int(rng.below(uint64_t(n)));
    const auto& nbrs = g.neighbors(v);
    Cell anchor = out.cells[size_t(v)];
    int radius = scale;
    if (!nbrs.empty() && rng.uniform01() < 0.5) {
      anchor = out.cells[size_t(nbrs[size_t(rng.below(nbrs.size()))])];
      radius = 2 * scale;
    }
    Cell cand{
        clamp_box(anchor.x + int(rng.below(uint64_t(2 * radius + 1))) - radius),
        clamp_box(anchor.y + int(rng.below(uint64_t(2 * radius + 1))) - radius),
        clamp_box(anchor.z + int(rng.below(uint64_t(2 * radius + 1))) - radius)};
    if (cand == out.cells[size_t(v)]) continue;
    bool clear = true;
    for (int w = 0; w < n && clear; ++w) {
      if (w != v && chebyshev(out.cells[size_t(w)], cand) < scale) clear = false;
    }
    if (!clear) continue;
    Cell prev = out.cells[size_t(v)];
    out.cells[size_t(v)] = cand;
    double cand_total = total_cost();
    double delta = cand_total - cur_total;
    if (delta > 0 && rng.uniform01() >= std::exp(-delta / temp)) {
      out.cells[size_t(v)] = prev;
      continue;
    }
    cur_total = cand_total;
    if (cur_total < best_total) {
      best_total = cur_total;
      best_cells = out.cells;
    }
  }
  out.cells = std::move(best_cells);

  // Pin the translation so equal-cost runs produce identical coordinates.
  Cell lo = out.cells[0];
  for (const Cell& c : out.cells) {
    lo = {std::min(lo.x, c.x), std::min(lo.y, c.y), std::min(lo.z, c.z)};
  }
  for (Cell& c : out.cells) c = c - lo;
  return out;
}

int bounding_box_side(const LatticeLayout& l) {
  if (l.cells.empty()) return 0;
  Cell lo = l.cells[0], hi = l.cells[0];
  for (const auto& c : l.cells) {
    lo = {std::min(lo.x, c.x), std::min(lo.y, c.y), std::min(lo.z, c.z)};
    hi = {std::max(hi.x, c.x), std::max(hi.y, c.y), std::max(hi.z, c.z)};
  }
  return std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
}

} // namespace mis3d
