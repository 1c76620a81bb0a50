#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <string>

#include <mis3d/mis3d.h>

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  mis3d_string_free(s);
  return out;
}

} // namespace

TEST_CASE("version and error strings are always present") {
  CHECK(mis3d_version() != nullptr);
  CHECK(mis3d_last_error() != nullptr);
}

TEST_CASE("c api graph round trip and failure reporting") {
  mis3d_graph* g = nullptr;
  REQUIRE(mis3d_graph_parse_json(R"({"n": 3, "edges": [[0,1],[1,2]]})", &g) ==
          MIS3D_OK);
  CHECK(mis3d_graph_vertex_count(g) == 3);
  CHECK(mis3d_graph_edge_count(g) == 2);

  char* out = nullptr;
  REQUIRE(mis3d_graph_to_json(g, &out) == MIS3D_OK);
  std::string j = take(out);
  mis3d_graph* h = nullptr;
  REQUIRE(mis3d_graph_parse_json(j.c_str(), &h) == MIS3D_OK);
  char* out2 = nullptr;
  REQUIRE(mis3d_graph_to_json(h, &out2) == MIS3D_OK);
  CHECK(take(out2) == j);
  mis3d_graph_free(h);
  mis3d_graph_free(g);

  mis3d_graph* bad = nullptr;
  CHECK(mis3d_graph_parse_json("{", &bad) == MIS3D_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(mis3d_last_error()) > 0);
}

TEST_CASE("c api random graphs are reproducible") {
  mis3d_graph *a = nullptr, *b = nullptr;
  REQUIRE(mis3d_graph_random(12, 0.3, 6, 99, &a) == MIS3D_OK);
  REQUIRE(mis3d_graph_random(12, 0.3, 6, 99, &b) == MIS3D_OK);
  char *ja = nullptr, *jb = nullptr;
  REQUIRE(mis3d_graph_to_json(a, &ja) == MIS3D_OK);
  REQUIRE(mis3d_graph_to_json(b, &jb) == MIS3D_OK);
  CHECK(take(ja) == take(jb));
  mis3d_graph_free(a);
  mis3d_graph_free(b);

  mis3d_graph* bad = nullptr;
  CHECK(mis3d_graph_random(-1, 0.3, 6, 1, &bad) ==
        MIS3D_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api embed, serialize, verify") {
  mis3d_graph* g = nullptr;
  REQUIRE(mis3d_graph_random(6, 0.4, 6, 7, &g) == MIS3D_OK);

  mis3d_embed_options opt;
  mis3d_embed_options_init(&opt);
  CHECK(opt.scale == 3);
  CHECK(opt.delta_global == doctest::Approx(0.2));
  CHECK(opt.r_b == doctest::Approx(1.2));

  mis3d_register* reg = nullptr;
  mis3d_embed_stats stats;
  REQUIRE(mis3d_embed(g, &opt, &reg, &stats) == MIS3D_OK);
  CHECK(stats.n == 6);
  CHECK(stats.n_plus == mis3d_register_atom_count(reg));
  CHECK(stats.n_plus >= 6);
  CHECK(stats.ancillas % 2 == 0);

  // registers survive a JSON round trip bit for bit
  char* rj = nullptr;
  REQUIRE(mis3d_register_to_json(reg, &rj) == MIS3D_OK);
  std::string reg_json = take(rj);
  mis3d_register* reg2 = nullptr;
  REQUIRE(mis3d_register_parse_json(reg_json.c_str(), &reg2) == MIS3D_OK);
  char* rj2 = nullptr;
  REQUIRE(mis3d_register_to_json(reg2, &rj2) == MIS3D_OK);
  CHECK(take(rj2) == reg_json);

  char* xyz = nullptr;
  REQUIRE(mis3d_register_to_xyz(reg, &xyz) == MIS3D_OK);
  std::string xyz_s = take(xyz);
  CHECK(int(std::count(xyz_s.begin(), xyz_s.end(), '\n')) == stats.n_plus);

  mis3d_report* rep = nullptr;
  REQUIRE(mis3d_verify(g, reg2, 60, 1000000, &rep) == MIS3D_OK);
  CHECK(mis3d_report_certified(rep) == 1);
  CHECK(mis3d_report_restriction_ok(rep) == 1);
  CHECK(mis3d_report_identity_ok(rep) == 1);
  CHECK(mis3d_report_ground_state_count(rep) >= 1);
  const char* s0 = mis3d_report_ground_state(rep, 0);
  REQUIRE(s0 != nullptr);
  CHECK(int(std::strlen(s0)) == stats.n_plus);
  CHECK(mis3d_report_ground_state(rep, 1 << 30) == nullptr);
  CHECK(mis3d_report_mis_augmented(rep) ==
        mis3d_report_mis_original(rep) + mis3d_report_half_ancillas(rep));

  char* repj = nullptr;
  REQUIRE(mis3d_report_to_json(rep, &repj) == MIS3D_OK);
  CHECK(take(repj).find("\"certified\"") != std::string::npos);

  mis3d_report_free(rep);
  mis3d_register_free(reg2);
  mis3d_register_free(reg);
  mis3d_graph_free(g);
}

TEST_CASE("c api gadget helpers") {
  double lo = 0, hi = 0;
  REQUIRE(mis3d_gadget_crossovers(1.0, 0.2, 1e-3, &lo, &hi) == MIS3D_OK);
  CHECK(lo == doctest::Approx(1.0 / 64.0 - 1.0 / 729.0).epsilon(1e-4));
  CHECK(hi == doctest::Approx(63.0 / 64.0).epsilon(1e-4));

  char* csv = nullptr;
  REQUIRE(mis3d_gadget_spectrum_csv(1.0, 0.2, 0.0, 0.02, 0.01, &csv) ==
          MIS3D_OK);
  CHECK(take(csv).find("delta_i") != std::string::npos);

  CHECK(mis3d_gadget_spectrum_csv(0.0, 0.2, 0.0, 1.0, 0.1, &csv) ==
        MIS3D_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api null handling") {
  CHECK(mis3d_graph_parse_json(nullptr, nullptr) ==
        MIS3D_ERR_INVALID_ARGUMENT);
  mis3d_string_free(nullptr);  // must be a no-op
  mis3d_graph_free(nullptr);
  mis3d_register_free(nullptr);
  mis3d_report_free(nullptr);
}
