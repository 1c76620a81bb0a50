#pragma once

#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/mis.hpp"
#include "core/reg.hpp"

namespace mis3d {

struct GroundStateReport {
  double min_energy = 0.0;
  // All states attaining min_energy (within degeneracy tolerance), each a
  // '0'/'1' string indexed by atom id, sorted lexicographically.
  std::vector<std::string> ground_states;
  // Original-vertex set of each ground state, parallel to ground_states.
  std::vector<VertexSet> restricted_sets;

  bool certified = false;
  bool restriction_ok = false;  // every ground state restricts to an MIS
  bool identity_ok = false;     // MIS(G+) == MIS(G) + sum_e k_e/2
  int mis_original = -1;
  int mis_augmented = -1;
  long long half_ancillas = -1;

  bool used_fallback = false;  // exhaustive scan instead of pruned search
  bool truncated = false;      // state list hit the cap or ran out of budget
};

// Exact classical ground states of a register. The search runs over
// independent sets of the blockade graph only; that restriction is proven
// valid per instance first (every blockade pair's interaction must beat the
// weaker endpoint's total detuning, so removing that endpoint always lowers
// the energy). If the proof fails, falls back to an exhaustive scan for
// N <= 24 atoms and refuses larger registers. work_budget caps the search
// tree; when it is exhausted the report comes back truncated instead of
// blocking, which downstream certification treats as failure.
GroundStateReport ground_states(const AtomRegister& reg, int size_limit = 60,
                                long long state_cap = 1000000,
                                long long work_budget = 200000000);

// Plain scan of all 2^N occupations, N <= 24. Reference implementation the
// pruned search is tested against.
GroundStateReport ground_states_exhaustive(const AtomRegister& reg,
                                           long long state_cap = 1000000);

// Original vertices whose atoms are occupied in z.
VertexSet restrict_to_original(const AtomRegister& reg, const std::string& z);

// Ground states plus the two certification checks: (a) every ground state
// restricts to a maximum independent set of g, (b) the ancilla counting
// identity MIS(G+) = MIS(G) + sum_e k_e/2 on the blockade graph.
GroundStateReport certify_embedding(const Graph& g, const AtomRegister& reg,
                                    int size_limit = 60,
                                    long long state_cap = 1000000,
                                    long long work_budget = 200000000);

// The 4-atom test chain: originals at 0 and 3s, ancillas at s and 2s, global
// detuning as given, both ancillas at local detuning delta_i. Atom order is
// the line order, so bit-strings read original-ancilla-ancilla-original.
AtomRegister make_gadget_register(double spacing, double delta_global,
                                  double delta_i);

// CSV over the sweep: delta_i, the 16 state energies, and the argmin states.
// State column b lists the occupation whose bits (msb first) follow the line
// order of make_gadget_register.
std::string gadget_spectrum_csv(double spacing, double delta_global,
                                const std::vector<double>& sweep);

struct GadgetCrossovers {
  double lower = 0.0;  // 1010 overtakes 1001 (window opens)
  double upper = 0.0;  // 0110 overtakes 1010 (window closes)
};

// Empirical crossover detunings from a sweep of the given step, refined by
// interpolating the two bracketing samples (the energies are linear in
// delta_i, so the interpolation is exact up to rounding).
GadgetCrossovers gadget_crossovers(double spacing, double delta_global,
                                   double step);

} // namespace mis3d
