#include "core/reg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/jsonio.hpp"

namespace mis3d {

using nlohmann::json;
using nlohmann::ordered_json;

void PhysicalParams::validate() const {
  if (!(U > 0)) fail(errc::invalid_argument, "U must be positive");
  if (!(r_b > 1.0) || !(r_b < std::sqrt(2.0))) {
    fail(errc::invalid_argument,
         "blockade radius must lie in (1, sqrt(2)), got " + format12(r_b));
  }
  if (!(delta_global > 0) || !(delta_global < U)) {
    fail(errc::invalid_argument,
         "global detuning must lie in (0, U), got " + format12(delta_global));
  }
  if (omega != 0.0) {
    fail(errc::invalid_argument,
         "only the diagonal sector is implemented; omega must be 0");
  }
}

double interaction(double r, const PhysicalParams& params) {
  if (!(r > 0)) {
    fail(errc::invalid_argument, "interaction needs r > 0 (coincident atoms?)");
  }
  double r3 = r * r * r;
  return params.U / (r3 * r3);
}

std::pair<double, double> detuning_bounds(double chain_spacing,
                                          const PhysicalParams& params) {
  if (!(chain_spacing > 0)) {
    fail(errc::invalid_argument, "chain spacing must be positive");
  }
  double us = interaction(chain_spacing, params);
  return {(1.0 / 64.0 - 1.0 / 729.0) * us, (63.0 / 64.0) * us};
}

AtomRegister assign_detunings(const AugmentedGraph& aug,
                              const PhysicalParams& params) {
  params.validate();
  AtomRegister reg;
  reg.params = params;
  reg.n_original = aug.n_original;
  reg.pos = aug.pos;
  reg.kind = aug.kind;
  reg.source = aug.source;
  reg.chains = aug.chains;
  reg.detuning.assign(reg.pos.size(), 0.0);
  for (const AugChain& c : reg.chains) {
    double us = interaction(c.spacing, params);
    double d = us / 2.0;
    auto [lo, hi] = detuning_bounds(c.spacing, params);
    if (!(d > lo && d < hi)) {
      fail(errc::inconsistent, "chain detuning fell outside its safe window");
    }
    for (size_t i = 1; i + 1 < c.atoms.size(); ++i) {
      reg.detuning[size_t(c.atoms[i])] = d;
    }
  }
  return reg;
}

double classical_energy(const AtomRegister& reg,
                        const std::vector<uint8_t>& z) {
  reg.params.validate();
  size_t n = reg.pos.size();
  if (z.size() != n) {
    fail(errc::invalid_argument, "bit-string length does not match atom count");
  }
  double e = 0.0;
  for (size_t j = 0; j < n; ++j) {
    if (z[j]) e -= reg.params.delta_global + reg.detuning[j];
  }
  for (size_t i = 0; i < n; ++i) {
    if (!z[i]) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (!z[j]) continue;
      double r = dist(reg.pos[i], reg.pos[j]);
      if (r < 1e-12) {
        fail(errc::inconsistent, "coincident occupied atoms in register");
      }
      e += interaction(r, reg.params);
    }
  }
  return e;
}

Graph blockade_graph(const AtomRegister& reg) {
  int n = reg.total_atoms();
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist(reg.pos[size_t(i)], reg.pos[size_t(j)]) <= reg.params.r_b) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

Graph chain_adjacency(const AtomRegister& reg) {
  Graph g(reg.total_atoms());
  for (const AugChain& c : reg.chains) {
    for (size_t i = 0; i + 1 < c.atoms.size(); ++i) {
      g.add_edge(c.atoms[i], c.atoms[i + 1]);
    }
  }
  return g;
}

ordered_json register_to_json(const AtomRegister& reg) {
  ordered_json j;
  j["params"] = {{"U", round12(reg.params.U)},
                 {"delta_global", round12(reg.params.delta_global)},
                 {"r_b", round12(reg.params.r_b)}};
  j["atoms"] = ordered_json::array();
  for (int i = 0; i < reg.total_atoms(); ++i) {
    ordered_json a;
    a["id"] = i;
    a["pos"] = {round12(reg.pos[size_t(i)].x), round12(reg.pos[size_t(i)].y),
                round12(reg.pos[size_t(i)].z)};
    a["kind"] = reg.kind[size_t(i)] == 0 ? "original" : "ancilla";
    a["source"] = reg.source[size_t(i)];
    a["local_detuning"] = round12(reg.detuning[size_t(i)]);
    j["atoms"].push_back(std::move(a));
  }
  j["chains"] = ordered_json::array();
  for (const AugChain& c : reg.chains) {
    ordered_json cj;
    cj["edge"] = {c.u, c.v};
    cj["atom_ids"] = c.atoms;
    j["chains"].push_back(std::move(cj));
  }
  return j;
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  fail(errc::parse, "register JSON: " + what);
}

double num(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

} // namespace

AtomRegister register_from_json(const json& j) {
  if (!j.is_object()) bad("top level must be an object");
  if (!j.contains("params") || !j.contains("atoms") || !j.contains("chains")) {
    bad("missing params/atoms/chains");
  }

  AtomRegister reg;
  const json& p = j["params"];
  if (!p.is_object()) bad("params must be an object");
  reg.params.U = num(p.value("U", json()), "params.U");
  reg.params.delta_global = num(p.value("delta_global", json()), "params.delta_global");
  reg.params.r_b = num(p.value("r_b", json()), "params.r_b");
  reg.params.validate();

  const json& atoms = j["atoms"];
  if (!atoms.is_array() || atoms.empty()) bad("atoms must be a non-empty array");
  int n_total = int(atoms.size());
  reg.pos.reserve(size_t(n_total));
  bool seen_ancilla = false;
  for (int i = 0; i < n_total; ++i) {
    const json& a = atoms[size_t(i)];
    if (!a.is_object()) bad("atom entries must be objects");
    if (!a.contains("id") || !a["id"].is_number_integer() ||
        a["id"].get<int>() != i) {
      bad("atom ids must be 0..N-1 in order");
    }
    const json& pos = a.value("pos", json());
    if (!pos.is_array() || pos.size() != 3) bad("atom pos must be [x,y,z]");
    reg.pos.push_back({num(pos[0], "pos.x"), num(pos[1], "pos.y"),
                       num(pos[2], "pos.z")});
    std::string kind = a.value("kind", std::string());
    if (kind == "original") {
      if (seen_ancilla) bad("original atoms must precede all ancillas");
      reg.kind.push_back(0);
    } else if (kind == "ancilla") {
      seen_ancilla = true;
      reg.kind.push_back(1);
    } else {
      bad("atom kind must be \"original\" or \"ancilla\"");
    }
    if (!a.contains("source") || !a["source"].is_number_integer()) {
      bad("atom source must be an integer");
    }
    reg.source.push_back(a["source"].get<int>());
    double d = num(a.value("local_detuning", json()), "local_detuning");
    if (d < 0) bad("local detunings must be >= 0");
    reg.detuning.push_back(d);
  }
  reg.n_original =
      int(std::count(reg.kind.begin(), reg.kind.end(), int8_t(0)));
  for (int i = 0; i < reg.n_original; ++i) {
    if (reg.source[size_t(i)] != i) bad("original atoms must have source == id");
    if (reg.detuning[size_t(i)] != 0.0) {
      bad("original atoms must have local detuning 0");
    }
  }

  const json& chains = j["chains"];
  if (!chains.is_array()) bad("chains must be an array");
  std::vector<int> chain_of(size_t(n_total), -1);
  for (int ci = 0; ci < int(chains.size()); ++ci) {
    const json& cj = chains[size_t(ci)];
    const json& ej = cj.value("edge", json());
    const json& aj = cj.value("atom_ids", json());
    if (!ej.is_array() || ej.size() != 2 || !ej[0].is_number_integer() ||
        !ej[1].is_number_integer()) {
      bad("chain edge must be [u,v]");
    }
    AugChain c;
    c.u = ej[0].get<int>();
    c.v = ej[1].get<int>();
    c.edge_id = ci;
    if (c.u < 0 || c.v < 0 || c.u >= reg.n_original || c.v >= reg.n_original ||
        c.u >= c.v) {
      bad("chain edge endpoints must be original atoms with u < v");
    }
    if (!aj.is_array() || aj.size() < 4 || aj.size() % 2 != 0) {
      bad("chain atom_ids must list u, an even number >= 2 of ancillas, v");
    }
    for (const json& x : aj) {
      if (!x.is_number_integer()) bad("chain atom_ids must be integers");
      int id = x.get<int>();
      if (id < 0 || id >= n_total) bad("chain atom id out of range");
      c.atoms.push_back(id);
    }
    if (c.atoms.front() != c.u || c.atoms.back() != c.v) {
      bad("chain atom_ids must start at u and end at v");
    }
    double d0 = reg.detuning[size_t(c.atoms[1])];
    for (size_t i = 1; i + 1 < c.atoms.size(); ++i) {
      int id = c.atoms[i];
      if (reg.kind[size_t(id)] != 1) bad("chain interior atoms must be ancillas");
      if (chain_of[size_t(id)] != -1) bad("ancilla appears in two chains");
      chain_of[size_t(id)] = ci;
      if (reg.source[size_t(id)] != ci) {
        bad("ancilla source must equal its chain index");
      }
      if (std::abs(reg.detuning[size_t(id)] - d0) > 1e-9 * (1.0 + d0)) {
        bad("all ancillas of one chain must share a detuning");
      }
    }
    double s = dist(reg.pos[size_t(c.atoms[0])], reg.pos[size_t(c.atoms[1])]);
    for (size_t i = 0; i + 1 < c.atoms.size(); ++i) {
      double si =
          dist(reg.pos[size_t(c.atoms[i])], reg.pos[size_t(c.atoms[i + 1])]);
      if (std::abs(si - s) > 1e-6) bad("chain spacing must be uniform");
    }
    c.spacing = s;
    reg.chains.push_back(std::move(c));
    if (ci > 0) {
      const AugChain& prev = reg.chains[size_t(ci) - 1];
      if (std::make_pair(prev.u, prev.v) >= std::make_pair(c.u, c.v)) {
        bad("chains must be sorted by edge");
      }
    }
  }
  for (int i = reg.n_original; i < n_total; ++i) {
    if (chain_of[size_t(i)] == -1) bad("ancilla belongs to no chain");
  }
  return reg;
}

std::string register_to_xyz(const AtomRegister& reg) {
  std::string out;
  for (int i = 0; i < reg.total_atoms(); ++i) {
    out += reg.kind[size_t(i)] == 0 ? "original" : "ancilla";
    out += ' ';
    out += format12(reg.pos[size_t(i)].x);
    out += ' ';
    out += format12(reg.pos[size_t(i)].y);
    out += ' ';
    out += format12(reg.pos[size_t(i)].z);
    out += '\n';
  }
  return out;
}

} // namespace mis3d
