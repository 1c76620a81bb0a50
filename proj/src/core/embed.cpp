#include "core/embed.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <thread>

#include "core/error.hpp"
#include "core/jsonio.hpp"
#include "core/layout.hpp"
#include "core/oracle.hpp"
#include "core/route.hpp"

namespace mis3d {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

long long bounding_volume(const AtomRegister& reg) {
  if (reg.pos.empty()) return 0;
  double lo[3] = {reg.pos[0].x, reg.pos[0].y, reg.pos[0].z};
  double hi[3] = {reg.pos[0].x, reg.pos[0].y, reg.pos[0].z};
  for (const Vec3& p : reg.pos) {
    double c[3] = {p.x, p.y, p.z};
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], c[a]);
      hi[a] = std::max(hi[a], c[a]);
    }
  }
  long long v = 1;
  for (int a = 0; a < 3; ++a) {
    v *= (long long)(std::ceil(hi[a]) - std::floor(lo[a])) + 1;
  }
  return v;
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t x = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b + 0xD1B54A32D192ED03ULL);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

} // namespace

EmbedResult embed_graph(const Graph& g, const EmbedOptions& opt) {
  if (opt.scale < 3) {
    fail(errc::invalid_argument, "scale must be >= 3");
  }
  if (opt.max_scale_retries < 0 || opt.fr_iterations < 0) {
    fail(errc::invalid_argument, "retries and iterations must be >= 0");
  }
  PhysicalParams params;
  params.delta_global = opt.delta_global;
  params.r_b = opt.r_b;
  params.validate();
  if (g.max_degree() > 6) {
    fail(errc::degree_bound,
         "graph has degree " + std::to_string(g.max_degree()) +
             "; only degree <= 6 is supported");
  }

  auto t0 = std::chrono::steady_clock::now();

  auto finish = [&](AtomRegister&& reg, int scale_used, int retries,
                    bool checked, bool ok) {
    EmbedResult res;
    res.reg = std::move(reg);
    res.stats.n = g.vertex_count();
    res.stats.n_plus = res.reg.total_atoms();
    res.stats.ancillas = res.stats.n_plus - res.stats.n;
    for (const AugChain& c : res.reg.chains) {
      res.stats.max_chain =
          std::max(res.stats.max_chain, int(c.atoms.size()) - 2);
    }
    res.stats.volume = bounding_volume(res.reg);
    res.stats.scale_used = scale_used;
    res.stats.retries = retries;
    res.stats.encoding_checked = checked;
    res.stats.encoding_ok = ok;
    res.stats.wall_seconds = seconds_since(t0);
    return res;
  };

  int attempts = 0;
  std::string last_routing_error;

  // Routes the layout and builds the register; false on a routing dead end.
  auto attempt = [&](const LatticeLayout& lat, AtomRegister* reg_out) {
    ++attempts;
    AugmentedGraph aug;
    try {
      std::vector<RoutedEdge> routes = route_edges(g, lat);
      aug = build_augmented_graph(g, lat, routes);
    } catch (const error& e) {
      // A geometry that routes but lands atoms inside the clearance floor is
      // as unusable as one that does not route; both send the ladder on.
      if (e.code() != errc::routing && e.code() != errc::inconsistent) throw;
      last_routing_error = e.what();
      return false;
    }
    *reg_out = assign_detunings(aug, params);
    return true;
  };

  // Small graphs get their ground-state encoding checked by the exact oracle
  // right inside the retry ladder: a layout whose bends and corridors pile
  // too much 1/r^6 tail weight onto one vertex shifts the true ground state
  // away from the intended one, and only a different geometry fixes that.
  // Candidates per scale: two compact placements, then a force-directed
  // layout as a fallback shape. Scales step by two so the start parity is
  // kept; odd scales let axis-aligned neighbors route as short odd chains.
  // Larger graphs are out of the oracle's reach; they take the first
  // geometry that routes, and the stats record that the check did not run.
  bool gate = g.vertex_count() <= kEncodingCheckMaxN && g.edge_count() > 0;

  if (!gate) {
    FrParams fr;
    fr.iterations = opt.fr_iterations;
    fr.seed = opt.seed;
    std::vector<Vec3> layout = fruchterman_reingold_3d(g, fr);
    for (int a = 0; a <= opt.max_scale_retries; ++a) {
      AtomRegister reg;
      if (attempt(snap_to_grid(layout, opt.scale + a), &reg)) {
        return finish(std::move(reg), opt.scale + a, attempts - 1, false,
                      false);
      }
    }
    fail(errc::routing, last_routing_error.empty()
                            ? "no routable geometry found"
                            : last_routing_error);
  }

  bool have_fallback = false;
  EmbedResult fallback;
  for (int a = 0; a <= opt.max_scale_retries; ++a) {
    int sc = opt.scale + 2 * a;
    for (int cand = 0; cand < 3; ++cand) {
      LatticeLayout lat;
      if (cand < 2) {
        lat = compact_lattice_layout(
            g, sc, mix_seed(opt.seed, 0xA77AuLL, uint64_t(a * 4 + cand)));
      } else {
        FrParams fr;
        fr.iterations = opt.fr_iterations;
        fr.seed = mix_seed(opt.seed, 0xF00DuLL, uint64_t(a));
        lat = snap_to_grid(fruchterman_reingold_3d(g, fr), sc);
      }
      AtomRegister reg;
      if (!attempt(lat, &reg)) continue;
      // Chains fanning out of a shared vertex leave stray pair energies that
      // erode the occupation margin of their far endpoints, and that margin
      // is the global detuning. When the default is too tight for this
      // geometry, retry the same geometry with the detuning raised toward
      // the ceiling set by unit-spacing chains (delta + U_s/2 must stay
      // below (1 - 1/64) U_s, so values up to ~0.48 U keep every chain
      // window intact). A geometry whose check does not finish quickly is
      // treated like a failed check; the ladder moves on rather than
      // stalling the embed.
      const double rungs[3] = {opt.delta_global, 0.45, 0.48};
      double prev = -1.0;
      for (double rung : rungs) {
        if (rung <= prev) continue;
        prev = rung;
        reg.params.delta_global = rung;
        GroundStateReport rep =
            certify_embedding(g, reg, reg.total_atoms(), 1000000, 20000000);
        if (rep.certified) {
          return finish(std::move(reg), sc, attempts - 1, true, true);
        }
      }
      if (!have_fallback) {
        reg.params.delta_global = opt.delta_global;
        fallback = finish(std::move(reg), sc, attempts - 1, true, false);
        have_fallback = true;
      }
    }
  }
  if (have_fallback) {
    fallback.stats.retries = attempts - 1;
    fallback.stats.wall_seconds = seconds_since(t0);
    return fallback;
  }
  fail(errc::routing, last_routing_error.empty()
                          ? "no routable geometry found"
                          : last_routing_error);
}

BenchResult run_bench(const std::vector<int>& sizes, double p, int samples,
                      uint64_t seed, const EmbedOptions& base) {
  if (samples < 1) fail(errc::invalid_argument, "samples must be >= 1");
  for (int n : sizes) {
    if (n < 1 || n > 200) {
      fail(errc::invalid_argument,
           "bench sizes must lie in [1, 200], got " + std::to_string(n));
    }
  }

  struct Cell {
    int n_plus = 0;
    double seconds = 0.0;
    bool ok = false;
  };
  std::vector<Cell> cells(sizes.size() * size_t(samples));

  auto worker = [&](size_t idx) {
    int n = sizes[idx / size_t(samples)];
    int k = int(idx % size_t(samples));
    uint64_t s = mix_seed(seed, uint64_t(n), uint64_t(k));
    Cell c;
    try {
      Graph g = erdos_renyi_bounded(n, p, 6, s);
      EmbedOptions opt = base;
      opt.seed = mix_seed(s, 0x5EEDuLL, 1);
      EmbedResult r = embed_graph(g, opt);
      c.n_plus = r.stats.n_plus;
      c.seconds = r.stats.wall_seconds;
      c.ok = true;
    } catch (const error&) {
      c.ok = false;
    }
    cells[idx] = c;
  };

  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  size_t total = cells.size();
  std::vector<std::future<void>> pool;
  size_t next = 0;
  auto drain = [&]() {
    for (auto& f : pool) f.get();
    pool.clear();
  };
  while (next < total) {
    pool.push_back(std::async(std::launch::async, worker, next));
    ++next;
    if (pool.size() >= hw * 2) drain();
  }
  drain();

  BenchResult out;
  for (size_t si = 0; si < sizes.size(); ++si) {
    BenchRecord rec;
    rec.n = sizes[si];
    rec.p = p;
    double sum = 0, sum2 = 0, tsum = 0;
    int ok = 0;
    for (int k = 0; k < samples; ++k) {
      const Cell& c = cells[si * size_t(samples) + size_t(k)];
      if (!c.ok) {
        ++rec.failures;
        continue;
      }
      ++ok;
      sum += c.n_plus;
      sum2 += double(c.n_plus) * c.n_plus;
      tsum += c.seconds;
    }
    rec.samples = ok;
    if (ok > 0) {
      rec.mean_n_plus = sum / ok;
      double var = std::max(0.0, sum2 / ok - rec.mean_n_plus * rec.mean_n_plus);
      rec.std_n_plus = std::sqrt(var);
      rec.mean_runtime = tsum / ok;
    }
    out.total_failures += rec.failures;
    out.records.push_back(rec);
  }

  // OLS of mean augmented size against original size, over sizes that
  // produced at least one successful sample.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  for (const BenchRecord& r : out.records) {
    if (r.samples == 0) continue;
    ++m;
    sx += r.n;
    sy += r.mean_n_plus;
    sxx += double(r.n) * r.n;
    sxy += r.n * r.mean_n_plus;
    syy += r.mean_n_plus * r.mean_n_plus;
  }
  if (m >= 2 && m * sxx - sx * sx > 0) {
    out.fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.fit.intercept = (sy - out.fit.slope * sx) / m;
    double ss_tot = syy - sy * sy / m;
    double ss_res = 0;
    for (const BenchRecord& r : out.records) {
      if (r.samples == 0) continue;
      double pred = out.fit.slope * r.n + out.fit.intercept;
      ss_res += (r.mean_n_plus - pred) * (r.mean_n_plus - pred);
    }
    out.fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  } else if (m >= 1) {
    out.fit.intercept = sy / m;
    out.fit.r2 = 1.0;
  }
  return out;
}

std::string bench_csv(const BenchResult& r) {
  std::string csv = "n,p,samples,mean_n_plus,std_n_plus,mean_runtime\n";
  for (const BenchRecord& rec : r.records) {
    csv += std::to_string(rec.n);
    csv += ',';
    csv += format12(rec.p);
    csv += ',';
    csv += std::to_string(rec.samples);
    csv += ',';
    csv += format12(rec.mean_n_plus);
    csv += ',';
    csv += format12(rec.std_n_plus);
    csv += ',';
    csv += format12(rec.mean_runtime);
    csv += '\n';
  }
  return csv;
}

} // namespace mis3d
