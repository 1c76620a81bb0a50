#include "mis3d/mis3d.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/embed.hpp"
#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/jsonio.hpp"
#include "core/oracle.hpp"
#include "core/reg.hpp"

struct mis3d_graph {
  mis3d::Graph g;
};
struct mis3d_register {
  mis3d::AtomRegister r;
};
struct mis3d_report {
  mis3d::GroundStateReport rep;
};

namespace {

thread_local std::string t_last_error = "no error";

mis3d_status map_code(mis3d::errc c) {
  switch (c) {
    case mis3d::errc::invalid_argument: return MIS3D_ERR_INVALID_ARGUMENT;
    case mis3d::errc::parse: return MIS3D_ERR_PARSE;
    case mis3d::errc::degree_bound: return MIS3D_ERR_DEGREE_BOUND;
    case mis3d::errc::routing: return MIS3D_ERR_ROUTING;
    case mis3d::errc::size_limit: return MIS3D_ERR_SIZE_LIMIT;
    case mis3d::errc::inconsistent: return MIS3D_ERR_INCONSISTENT;
    case mis3d::errc::internal: return MIS3D_ERR_INTERNAL;
  }
  return MIS3D_ERR_INTERNAL;
}

template <typename F>
mis3d_status guarded(F&& f) {
  try {
    f();
    return MIS3D_OK;
  } catch (const mis3d::error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    t_last_error = e.what();
    return MIS3D_ERR_PARSE;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MIS3D_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return MIS3D_ERR_INTERNAL;
  }
}

mis3d_status arg_error(const char* msg) {
  t_last_error = msg;
  return MIS3D_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

mis3d_status out_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) {
    t_last_error = "out of memory";
    return MIS3D_ERR_INTERNAL;
  }
  return MIS3D_OK;
}

} // namespace

extern "C" {

const char* mis3d_version(void) { return "0.1.0"; }

const char* mis3d_last_error(void) { return t_last_error.c_str(); }

void mis3d_string_free(char* s) { std::free(s); }

mis3d_status mis3d_graph_parse_json(const char* json, mis3d_graph** out) {
  if (!json || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new mis3d_graph{mis3d::Graph::from_json(json)};
  });
}

mis3d_status mis3d_graph_random(int n, double p, int max_degree,
                                uint64_t seed, mis3d_graph** out) {
  if (!out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h =
        new mis3d_graph{mis3d::erdos_renyi_bounded(n, p, max_degree, seed)};
    *out = h;
  });
}

mis3d_status mis3d_graph_to_json(const mis3d_graph* g, char** out) {
  if (!g || !out) return arg_error("null argument");
  *out = nullptr;
  mis3d_status st = MIS3D_OK;
  mis3d_status run = guarded([&] {
    st = out_string(g->g.to_json(), out);
  });
  return run != MIS3D_OK ? run : st;
}

int mis3d_graph_vertex_count(const mis3d_graph* g) {
  return g ? g->g.vertex_count() : -1;
}

int mis3d_graph_edge_count(const mis3d_graph* g) {
  return g ? g->g.edge_count() : -1;
}

void mis3d_graph_free(mis3d_graph* g) { delete g; }

void mis3d_embed_options_init(mis3d_embed_options* opt) {
  if (!opt) return;
  mis3d::EmbedOptions d;
  opt->scale = d.scale;
  opt->seed = d.seed;
  opt->fr_iterations = d.fr_iterations;
  opt->delta_global = d.delta_global;
  opt->r_b = d.r_b;
  opt->max_scale_retries = d.max_scale_retries;
}

mis3d_status mis3d_embed(const mis3d_graph* g,
                         const mis3d_embed_options* opt,
                         mis3d_register** out, mis3d_embed_stats* stats) {
  if (!g || !opt || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    mis3d::EmbedOptions o;
    o.scale = opt->scale;
    o.seed = opt->seed;
    o.fr_iterations = opt->fr_iterations;
    o.delta_global = opt->delta_global;
    o.r_b = opt->r_b;
    o.max_scale_retries = opt->max_scale_retries;
    mis3d::EmbedResult r = mis3d::embed_graph(g->g, o);
    if (stats) {
      stats->n = r.stats.n;
      stats->n_plus = r.stats.n_plus;
      stats->ancillas = r.stats.ancillas;
      stats->max_chain = r.stats.max_chain;
      stats->volume = r.stats.volume;
      stats->wall_seconds = r.stats.wall_seconds;
      stats->scale_used = r.stats.scale_used;
      stats->retries = r.stats.retries;
    }
    *out = new mis3d_register{std::move(r.reg)};
  });
}

mis3d_status mis3d_register_parse_json(const char* json,
                                       mis3d_register** out) {
  if (!json || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto j = nlohmann::json::parse(json);
    *out = new mis3d_register{mis3d::register_from_json(j)};
  });
}

mis3d_status mis3d_register_to_json(const mis3d_register* r, char** out) {
  if (!r || !out) return arg_error("null argument");
  *out = nullptr;
  mis3d_status st = MIS3D_OK;
  mis3d_status run = guarded([&] {
    st = out_string(mis3d::register_to_json(r->r).dump(2) + "\n", out);
  });
  return run != MIS3D_OK ? run : st;
}

mis3d_status mis3d_register_to_xyz(const mis3d_register* r, char** out) {
  if (!r || !out) return arg_error("null argument");
  *out = nullptr;
  mis3d_status st = MIS3D_OK;
  mis3d_status run = guarded([&] {
    st = out_string(mis3d::register_to_xyz(r->r), out);
  });
  return run != MIS3D_OK ? run : st;
}

int mis3d_register_atom_count(const mis3d_register* r) {
  return r ? r->r.total_atoms() : -1;
}

void mis3d_register_free(mis3d_register* r) { delete r; }

mis3d_status mis3d_verify(const mis3d_graph* g, const mis3d_register* r,
                          int oracle_limit, long long state_cap,
                          mis3d_report** out) {
  if (!g || !r || !out) return arg_error("null argument");
  if (oracle_limit < 1 || state_cap < 1) {
    return arg_error("oracle limit and state cap must be >= 1");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new mis3d_report{
        mis3d::certify_embedding(g->g, r->r, oracle_limit, state_cap)};
  });
}

int mis3d_report_certified(const mis3d_report* rep) {
  return rep ? (rep->rep.certified ? 1 : 0) : -1;
}

double mis3d_report_min_energy(const mis3d_report* rep) {
  return rep ? rep->rep.min_energy : 0.0;
}

long long mis3d_report_ground_state_count(const mis3d_report* rep) {
  return rep ? (long long)rep->rep.ground_states.size() : -1;
}

const char* mis3d_report_ground_state(const mis3d_report* rep, long long i) {
  if (!rep || i < 0 || i >= (long long)rep->rep.ground_states.size()) {
    return nullptr;
  }
  return rep->rep.ground_states[size_t(i)].c_str();
}

int mis3d_report_mis_original(const mis3d_report* rep) {
  return rep ? rep->rep.mis_original : -1;
}

int mis3d_report_mis_augmented(const mis3d_report* rep) {
  return rep ? rep->rep.mis_augmented : -1;
}

long long mis3d_report_half_ancillas(const mis3d_report* rep) {
  return rep ? rep->rep.half_ancillas : -1;
}

int mis3d_report_restriction_ok(const mis3d_report* rep) {
  return rep ? (rep->rep.restriction_ok ? 1 : 0) : -1;
}

int mis3d_report_identity_ok(const mis3d_report* rep) {
  return rep ? (rep->rep.identity_ok ? 1 : 0) : -1;
}

mis3d_status mis3d_report_to_json(const mis3d_report* rep, char** out) {
  if (!rep || !out) return arg_error("null argument");
  *out = nullptr;
  mis3d_status st = MIS3D_OK;
  mis3d_status run = guarded([&] {
    const mis3d::GroundStateReport& r = rep->rep;
    nlohmann::ordered_json j;
    j["certified"] = r.certified;
    j["restriction_ok"] = r.restriction_ok;
    j["identity_ok"] = r.identity_ok;
    j["min_energy"] = mis3d::round12(r.min_energy);
    j["mis_original"] = r.mis_original;
    j["mis_augmented"] = r.mis_augmented;
    j["half_ancillas"] = r.half_ancillas;
    j["ground_state_count"] = r.ground_states.size();
    j["ground_states"] = r.ground_states;
    j["restricted_sets"] = r.restricted_sets;
    j["used_fallback"] = r.used_fallback;
    j["truncated"] = r.truncated;
    st = out_string(j.dump(2) + "\n", out);
  });
  return run != MIS3D_OK ? run : st;
}

void mis3d_report_free(mis3d_report* rep) { delete rep; }

mis3d_status mis3d_gadget_spectrum_csv(double spacing, double delta_global,
                                       double lo, double hi, double step,
                                       char** out) {
  if (!out) return arg_error("null argument");
  if (!(step > 0) || lo < 0 || hi < lo) {
    return arg_error("sweep must satisfy 0 <= lo <= hi, step > 0");
  }
  *out = nullptr;
  mis3d_status st = MIS3D_OK;
  mis3d_status run = guarded([&] {
    std::vector<double> sweep;
    for (long long k = 0;; ++k) {
      double v = lo + double(k) * step;
      if (v > hi + step * 1e-9) break;
      sweep.push_back(v);
    }
    st = out_string(
        mis3d::gadget_spectrum_csv(spacing, delta_global, sweep), out);
  });
  return run != MIS3D_OK ? run : st;
}

mis3d_status mis3d_gadget_crossovers(double spacing, double delta_global,
                                     double step, double* lower,
                                     double* upper) {
  if (!lower || !upper) return arg_error("null argument");
  return guarded([&] {
    mis3d::GadgetCrossovers c =
        mis3d::gadget_crossovers(spacing, delta_global, step);
    *lower = c.lower;
    *upper = c.upper;
  });
}

mis3d_status mis3d_bench_csv(const int* sizes, int n_sizes, double p,
                             int samples, uint64_t seed,
                             const mis3d_embed_options* opt, char** csv_out,
                             double* slope, double* intercept, double* r2,
                             int* failures) {
  if (!sizes || n_sizes < 1 || !opt || !csv_out) {
    return arg_error("null argument or empty size list");
  }
  *csv_out = nullptr;
  mis3d_status st = MIS3D_OK;
  mis3d_status run = guarded([&] {
    mis3d::EmbedOptions base;
    base.scale = opt->scale;
    base.seed = opt->seed;
    base.fr_iterations = opt->fr_iterations;
    base.delta_global = opt->delta_global;
    base.r_b = opt->r_b;
    base.max_scale_retries = opt->max_scale_retries;
    std::vector<int> ns(sizes, sizes + n_sizes);
    mis3d::BenchResult r = mis3d::run_bench(ns, p, samples, seed, base);
    if (slope) *slope = r.fit.slope;
    if (intercept) *intercept = r.fit.intercept;
    if (r2) *r2 = r.fit.r2;
    if (failures) *failures = r.total_failures;
    st = out_string(mis3d::bench_csv(r), csv_out);
  });
  return run != MIS3D_OK ? run : st;
}

} // extern "C"
