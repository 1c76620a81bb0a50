#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/graph.hpp"
#include "core/route.hpp"
#include "core/vec3.hpp"

namespace mis3d {

// Energies are expressed in units of U, lengths in lattice units. C6 is
// absorbed: two atoms at unit distance interact with energy exactly U.
//
// The default global detuning must beat the stray 1/r^6 tails an occupied
// vertex picks up from atoms it is not meant to interact with. With clean
// routing those are distance-2 pairs of U/64 each, at most a handful per
// vertex, so 0.2 U holds a roughly twofold margin while staying well below
// U. Geometries that force tighter fan-outs need more; the embed ladder may
// raise the value per register (see embed_graph), which is why this is a
// parameter and not a constant.
struct PhysicalParams {
  double U = 1.0;
  double delta_global = 0.2;
  double r_b = 1.2;
  double omega = 0.0;  // kept for completeness; evaluations require 0

  void validate() const;
};

struct AtomRegister {
  PhysicalParams params;
  int n_original = 0;
  std::vector<Vec3> pos;
  std::vector<int8_t> kind;      // 0 original, 1 ancilla
  std::vector<int> source;       // originals: vertex id; ancillas: edge id
  std::vector<double> detuning;  // local detuning per atom, 0 for originals
  std::vector<AugChain> chains;

  int total_atoms() const { return int(pos.size()); }
};

// Pairwise interaction U / r^6. r = 0 means coincident atoms and is an error.
double interaction(double r, const PhysicalParams& params);

// Admissible window for a chain's local detuning, scaled to the chain's own
// nearest-neighbor energy U_s = U/s^6: ((1/64 - 1/729) U_s, (1 - 1/64) U_s).
// Below the lower end a lone next-nearest tail already beats the detuning
// gain; above the upper end a doubly-excited neighborhood becomes favorable.
std::pair<double, double> detuning_bounds(double chain_spacing,
                                          const PhysicalParams& params);

// Build the register: originals keep local detuning 0, each chain's ancillas
// get the midpoint-safe value U_s/2 for that chain's spacing.
AtomRegister assign_detunings(const AugmentedGraph& aug,
                              const PhysicalParams& params);

// Diagonal energy of occupation z: -sum_j (delta + delta_j) z_j
// + sum_{i<j} U/r_ij^6 z_i z_j, with the full 1/r^6 tail sum (no cutoff).
double classical_energy(const AtomRegister& reg,
                        const std::vector<uint8_t>& z);

// Atoms closer than r_b are linked. For registers built by this pipeline the
// result must coincide with the chain adjacency; that is checked by the
// oracle, not assumed here.
Graph blockade_graph(const AtomRegister& reg);

// The adjacency the construction intends: consecutive atoms along each chain.
// blockade_graph must reproduce this exactly on well-formed registers.
Graph chain_adjacency(const AtomRegister& reg);

nlohmann::ordered_json register_to_json(const AtomRegister& reg);

// Parses a register back. Structure is checked strictly (ids, kinds, chain
// membership, consistent spacing); detuning *values* are taken as given even
// if they violate the admissible window, so that deliberately broken
// registers can be loaded and then fail certification.
AtomRegister register_from_json(const nlohmann::json& j);

// One atom per line: "kind x y z".
std::string register_to_xyz(const AtomRegister& reg);

} // namespace mis3d
