// Command-line front end. Links only the public C API so that the same
// surface exercised here is the one external users get.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mis3d/mis3d.h"

namespace {

struct CApiError {
  mis3d_status status;
  std::string message;
};

void check(mis3d_status st) {
  if (st != MIS3D_OK) throw CApiError{st, mis3d_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CApiError{MIS3D_ERR_INVALID_ARGUMENT, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CApiError{MIS3D_ERR_INVALID_ARGUMENT, "cannot write " + path};
  out << data;
  if (!out) throw CApiError{MIS3D_ERR_INTERNAL, "short write to " + path};
}

// Owned C string -> std::string
std::string take(char* s) {
  std::string out = s ? s : "";
  mis3d_string_free(s);
  return out;
}

struct GraphHandle {
  mis3d_graph* g = nullptr;
  ~GraphHandle() { mis3d_graph_free(g); }
};
struct RegisterHandle {
  mis3d_register* r = nullptr;
  ~RegisterHandle() { mis3d_register_free(r); }
};
struct ReportHandle {
  mis3d_report* rep = nullptr;
  ~ReportHandle() { mis3d_report_free(rep); }
};

// "lo:hi:step"
void parse_sweep(const std::string& s, double* lo, double* hi, double* step) {
  size_t a = s.find(':'), b = s.rfind(':');
  if (a == std::string::npos || b == a) {
    throw CApiError{MIS3D_ERR_INVALID_ARGUMENT,
                    "sweep must be lo:hi:step, got '" + s + "'"};
  }
  try {
    *lo = std::stod(s.substr(0, a));
    *hi = std::stod(s.substr(a + 1, b - a - 1));
    *step = std::stod(s.substr(b + 1));
  } catch (const std::exception&) {
    throw CApiError{MIS3D_ERR_INVALID_ARGUMENT,
                    "sweep must be lo:hi:step, got '" + s + "'"};
  }
}

int cmd_embed(const std::string& graph_file, const std::string& out_file,
              const std::string& xyz_file, const mis3d_embed_options& opt) {
  GraphHandle g;
  check(mis3d_graph_parse_json(read_file(graph_file).c_str(), &g.g));

  RegisterHandle reg;
  mis3d_embed_stats stats{};
  check(mis3d_embed(g.g, &opt, &reg.r, &stats));

  char* json = nullptr;
  check(mis3d_register_to_json(reg.r, &json));
  write_file(out_file, take(json));
  if (!xyz_file.empty()) {
    char* xyz = nullptr;
    check(mis3d_register_to_xyz(reg.r, &xyz));
    write_file(xyz_file, take(xyz));
  }

  std::printf("embedded %s -> %s\n", graph_file.c_str(), out_file.c_str());
  std::printf("  N original       %d\n", stats.n);
  std::printf("  N augmented      %d\n", stats.n_plus);
  std::printf("  ancilla atoms    %d\n", stats.ancillas);
  std::printf("  max chain size   %d\n", stats.max_chain);
  std::printf("  bounding volume  %lld cells\n", stats.volume);
  std::printf("  scale used       %d (%d retries)\n", stats.scale_used,
              stats.retries);
  std::printf("  wall time        %.3f s\n", stats.wall_seconds);
  return 0;
}

int cmd_verify(const std::string& graph_file, const std::string& reg_file,
               int limit) {
  GraphHandle g;
  check(mis3d_graph_parse_json(read_file(graph_file).c_str(), &g.g));
  RegisterHandle reg;
  check(mis3d_register_parse_json(read_file(reg_file).c_str(), &reg.r));

  ReportHandle rep;
  check(mis3d_verify(g.g, reg.r, limit, 1000000, &rep.rep));

  bool certified = mis3d_report_certified(rep.rep) == 1;
  std::printf("certified        %s\n", certified ? "true" : "false");
  std::printf("  mis original   %d\n", mis3d_report_mis_original(rep.rep));
  std::printf("  mis augmented  %d\n", mis3d_report_mis_augmented(rep.rep));
  std::printf("  half ancillas  %lld\n", mis3d_report_half_ancillas(rep.rep));
  std::printf("  identity ok    %s\n",
              mis3d_report_identity_ok(rep.rep) == 1 ? "true" : "false");
  std::printf("  restriction ok %s\n",
              mis3d_report_restriction_ok(rep.rep) == 1 ? "true" : "false");
  std::printf("  ground states  %lld (min energy %.12g)\n",
              mis3d_report_ground_state_count(rep.rep),
              mis3d_report_min_energy(rep.rep));

  char* json = nullptr;
  check(mis3d_report_to_json(rep.rep, &json));
  std::printf("%s", take(json).c_str());
  return certified ? 0 : 2;
}

int cmd_bench(const std::string& sizes_arg, int samples, double p,
              uint64_t seed, const std::string& out_file,
              const mis3d_embed_options& opt) {
  std::vector<int> sizes;
  std::stringstream ss(sizes_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      sizes.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw CApiError{MIS3D_ERR_INVALID_ARGUMENT,
                      "bad size '" + tok + "' in --sizes"};
    }
  }
  if (sizes.empty()) {
    throw CApiError{MIS3D_ERR_INVALID_ARGUMENT, "--sizes list is empty"};
  }

  char* csv = nullptr;
  double slope = 0, intercept = 0, r2 = 0;
  int failures = 0;
  check(mis3d_bench_csv(sizes.data(), int(sizes.size()), p, samples, seed,
                        &opt, &csv, &slope, &intercept, &r2, &failures));
  write_file(out_file, take(csv));

  std::printf("bench: %zu sizes x %d samples, p=%.12g -> %s\n", sizes.size(),
              samples, p, out_file.c_str());
  std::printf("  fit mean N+ ~ %.12g * N + %.12g (R^2 = %.12g)\n", slope,
              intercept, r2);
  if (failures > 0) {
    std::fprintf(stderr, "warning: %d embedding(s) failed and were excluded\n",
                 failures);
  }
  return 0;
}

int cmd_gadget(double spacing, double delta, const std::string& sweep_arg,
               const std::string& out_file) {
  double lo = 0, hi = 0, step = 0;
  parse_sweep(sweep_arg, &lo, &hi, &step);

  char* csv = nullptr;
  check(mis3d_gadget_spectrum_csv(spacing, delta, lo, hi, step, &csv));
  write_file(out_file, take(csv));

  double lower = 0, upper = 0;
  check(mis3d_gadget_crossovers(spacing, delta, step, &lower, &upper));
  std::printf("gadget spectrum: spacing %.12g, delta %.12g -> %s\n", spacing,
              delta, out_file.c_str());
  std::printf("  crossover 1001 -> 1010 at delta_i = %.12g\n", lower);
  std::printf("  crossover 1010 -> 0110 at delta_i = %.12g\n", upper);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIS-to-neutral-atom register compiler and oracle"};
  app.require_subcommand(1);

  mis3d_embed_options opt;
  mis3d_embed_options_init(&opt);

  // embed
  auto* embed = app.add_subcommand("embed", "embed a graph into a register");
  std::string e_graph, e_out, e_xyz;
  embed->add_option("--graph", e_graph, "graph JSON file")->required();
  embed->add_option("--out", e_out, "output register JSON file")->required();
  embed->add_option("--xyz", e_xyz, "also write an XYZ point file");
  embed->add_option("--scale", opt.scale, "lattice clearance (>= 3)");
  embed->add_option("--seed", opt.seed, "layout seed");
  embed->add_option("--delta", opt.delta_global, "global detuning, units of U");
  embed->add_option("--rb", opt.r_b, "blockade radius");

  // verify
  auto* verify = app.add_subcommand("verify", "certify a register's encoding");
  std::string v_graph, v_reg;
  int v_limit = 60;
  verify->add_option("--graph", v_graph, "graph JSON file")->required();
  verify->add_option("--register", v_reg, "register JSON file")->required();
  verify->add_option("--limit", v_limit, "oracle atom-count limit");

  // bench
  auto* bench = app.add_subcommand("bench", "overhead benchmark");
  std::string b_sizes, b_out;
  int b_samples = 20;
  double b_p = 0.15;
  uint64_t b_seed = 1;
  bench->add_option("--sizes", b_sizes, "comma-separated sizes")->required();
  bench->add_option("--samples", b_samples, "graphs per size");
  bench->add_option("--p", b_p, "edge probability");
  bench->add_option("--seed", b_seed, "instance seed");
  bench->add_option("--out", b_out, "output CSV file")->required();

  // gadget
  auto* gadget = app.add_subcommand("gadget", "4-atom chain spectrum sweep");
  double g_spacing = 1.0, g_delta = 0.2;
  std::string g_sweep = "0:1.1:0.001", g_out;
  gadget->add_option("--spacing", g_spacing, "chain spacing");
  gadget->add_option("--delta", g_delta, "global detuning, units of U");
  gadget->add_option("--sweep", g_sweep, "local detuning sweep lo:hi:step");
  gadget->add_option("--out", g_out, "output CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (embed->parsed()) return cmd_embed(e_graph, e_out, e_xyz, opt);
    if (verify->parsed()) return cmd_verify(v_graph, v_reg, v_limit);
    if (bench->parsed()) {
      return cmd_bench(b_sizes, b_samples, b_p, b_seed, b_out, opt);
    }
    if (gadget->parsed()) return cmd_gadget(g_spacing, g_delta, g_sweep, g_out);
  } catch (const CApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return 1;
  }
  return 1;
}
