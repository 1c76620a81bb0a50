#include <doctest.h>

#include <cmath>

#include "core/embed.hpp"
#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/oracle.hpp"

using namespace mis3d;

TEST_CASE("gadget ground states at the reference detunings") {
  // midpoint ancilla detuning: the two alternating states tie exactly
  GroundStateReport r = ground_states(make_gadget_register(1.0, 0.2, 0.5));
  REQUIRE(r.ground_states.size() == 2);
  CHECK(r.ground_states[0] == "0101");
  CHECK(r.ground_states[1] == "1010");
  CHECK(r.min_energy == doctest::Approx(-0.884375).epsilon(1e-12));
  CHECK(!r.truncated);
  CHECK(!r.used_fallback);

  // with the ancilla detuning off, both endpoints occupy instead
  r = ground_states(make_gadget_register(1.0, 0.2, 0.0));
  REQUIRE(r.ground_states.size() == 1);
  CHECK(r.ground_states[0] == "1001");
  CHECK(r.min_energy ==
        doctest::Approx(-0.4 + 1.0 / 729.0).epsilon(1e-12));
}

TEST_CASE("restriction picks out the original atoms") {
  AtomRegister reg = make_gadget_register(1.0, 0.2, 0.5);
  CHECK(restrict_to_original(reg, "1010") == VertexSet{0});
  CHECK(restrict_to_original(reg, "0101") == VertexSet{1});
  CHECK(restrict_to_original(reg, "1001") == VertexSet{0, 1});
  CHECK(restrict_to_original(reg, "0000") == VertexSet{});
  CHECK_THROWS_AS(restrict_to_original(reg, "101"), error);
}

TEST_CASE("crossovers land on the window endpoints") {
  GadgetCrossovers c = gadget_crossovers(1.0, 0.2, 1e-3);
  double lo = 1.0 / 64.0 - 1.0 / 729.0;
  CHECK(std::abs(c.lower - lo) <= 1e-3);
  CHECK(std::abs(c.upper - 63.0 / 64.0) <= 1e-3);
  // the energies are linear in delta_i, so interpolating the bracketing
  // samples recovers the exact thresholds
  CHECK(std::abs(c.lower - lo) <= 1e-8);
  CHECK(std::abs(c.upper - 63.0 / 64.0) <= 1e-8);

  // fractional spacing scales both thresholds by the chain energy
  GadgetCrossovers c8 = gadget_crossovers(0.8, 0.2, 1e-3);
  double us = 1.0 / std::pow(0.8, 6);
  CHECK(std::abs(c8.lower - lo * us) <= 1e-3 * us);
  CHECK(std::abs(c8.upper - 63.0 / 64.0 * us) <= 1e-3 * us);
}

TEST_CASE("spectrum csv sweeps all sixteen states") {
  std::string csv = gadget_spectrum_csv(1.0, 0.2, {0.0, 0.5});
  // header plus two sweep rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("delta_i") != std::string::npos);
  // at delta_i = 0 the argmin column names the endpoints-only state
  std::string row0 = csv.substr(csv.find('\n') + 1);
  row0 = row0.substr(0, row0.find('\n'));
  CHECK(row0.find("1001") != std::string::npos);
  CHECK(std::count(row0.begin(), row0.end(), ',') >= 17);
}

TEST_CASE("pruned search equals exhaustive enumeration") {
  std::vector<AtomRegister> regs;
  regs.push_back(make_gadget_register(1.0, 0.2, 0.5));
  regs.push_back(make_gadget_register(1.0, 0.2, 0.0));
  regs.push_back(make_gadget_register(0.8, 0.3, 1.9));
  for (uint64_t seed : {1, 2, 3, 4}) {
    Graph g = erdos_renyi_bounded(2 + int(seed) % 3, 0.5, 6, seed);
    EmbedOptions opt;
    opt.seed = seed;
    AtomRegister reg = embed_graph(g, opt).reg;
    if (reg.total_atoms() <= 20) regs.push_back(reg);
  }
  for (size_t i = 0; i < regs.size(); ++i) {
    CAPTURE(i);
    GroundStateReport pruned = ground_states(regs[i]);
    GroundStateReport brute = ground_states_exhaustive(regs[i]);
    CHECK(pruned.ground_states == brute.ground_states);
    CHECK(pruned.min_energy ==
          doctest::Approx(brute.min_energy).epsilon(1e-12));
    CHECK(!pruned.used_fallback);
  }
}

TEST_CASE("a single edge certifies with both endpoint choices") {
  Graph g(2, {{0, 1}});
  EmbedOptions opt;
  EmbedResult er = embed_graph(g, opt);
  GroundStateReport rep = certify_embedding(g, er.reg);
  CHECK(rep.certified);
  CHECK(rep.restriction_ok);
  CHECK(rep.identity_ok);
  CHECK(rep.mis_original == 1);
  REQUIRE(rep.restricted_sets.size() == 2);
  bool saw0 = false, saw1 = false;
  for (const VertexSet& s : rep.restricted_sets) {
    if (s == VertexSet{0}) saw0 = true;
    if (s == VertexSet{1}) saw1 = true;
  }
  CHECK(saw0);
  CHECK(saw1);
  // each chain contributes half its ancillas to the augmented optimum
  CHECK(rep.mis_augmented == 1 + rep.half_ancillas);
}

TEST_CASE("a triangle certifies with singleton restrictions") {
  Graph g(3, {{0, 1}, {0, 2}, {1, 2}});
  EmbedOptions opt;
  EmbedResult er = embed_graph(g, opt);
  GroundStateReport rep = certify_embedding(g, er.reg);
  CHECK(rep.certified);
  for (const VertexSet& s : rep.restricted_sets) CHECK(s.size() == 1);
}

TEST_CASE("zeroed ancilla detunings break certification") {
  Graph g(2, {{0, 1}});
  EmbedOptions opt;
  AtomRegister reg = embed_graph(g, opt).reg;
  for (size_t i = 0; i < reg.detuning.size(); ++i) reg.detuning[i] = 0.0;
  GroundStateReport rep = certify_embedding(g, reg);
  CHECK(!rep.certified);
  CHECK(!rep.restriction_ok);
  // the broken ground state occupies both endpoints at once
  bool both = false;
  for (const VertexSet& s : rep.restricted_sets)
    if (s == VertexSet{0, 1}) both = true;
  CHECK(both);
}

TEST_CASE("unsound pruning falls back to the exhaustive scan") {
  // consecutive atoms sit just inside the blockade radius, but the total
  // detuning beats their interaction, so the independence restriction is
  // not justified and the oracle must notice
  AtomRegister reg = make_gadget_register(1.19, 0.2, 0.5);
  GroundStateReport pruned = ground_states(reg);
  CHECK(pruned.used_fallback);
  GroundStateReport brute = ground_states_exhaustive(reg);
  CHECK(pruned.ground_states == brute.ground_states);
  CHECK(pruned.min_energy == doctest::Approx(brute.min_energy));
}

TEST_CASE("oracle limits are enforced") {
  AtomRegister reg = make_gadget_register(1.0, 0.2, 0.5);
  CHECK_THROWS_AS(ground_states(reg, 2), error);

  GroundStateReport starved = ground_states(reg, 60, 1000000, 1);
  CHECK(starved.truncated);

  Graph g(2, {{0, 1}});
  EmbedOptions opt;
  EmbedResult er = embed_graph(g, opt);
  GroundStateReport rep = certify_embedding(g, er.reg, 60, 1000000, 1);
  CHECK(!rep.certified);
}

TEST_CASE("oracle output is deterministic") {
  Graph g = erdos_renyi_bounded(6, 0.4, 6, 17);
  EmbedOptions opt;
  opt.seed = 17;
  AtomRegister reg = embed_graph(g, opt).reg;
  GroundStateReport a = certify_embedding(g, reg);
  GroundStateReport b = certify_embedding(g, reg);
  CHECK(a.ground_states == b.ground_states);
  CHECK(a.min_energy == b.min_energy);
  CHECK(a.certified == b.certified);
}
