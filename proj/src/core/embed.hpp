#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/reg.hpp"

namespace mis3d {

struct EmbedOptions {
  int scale = 3;            // lattice clearance between original atoms
  uint64_t seed = 1;        // force-directed layout seed
  int fr_iterations = 200;
  double delta_global = 0.2;
  double r_b = 1.2;
  int max_scale_retries = 4;
};

// Largest original-vertex count for which embed_graph runs the exact
// ground-state oracle on candidate geometries before accepting one.
constexpr int kEncodingCheckMaxN = 12;

struct EmbedStats {
  int n = 0;
  int n_plus = 0;
  int ancillas = 0;   // sum of k_e
  int max_chain = 0;  // largest k_e
  long long volume = 0;  // cells in the bounding box of the register
  double wall_seconds = 0.0;
  int scale_used = 0;
  int retries = 0;            // geometry attempts beyond the first
  bool encoding_checked = false;  // oracle ran inside the retry ladder
  bool encoding_ok = false;       // and accepted the returned geometry
};

struct EmbedResult {
  AtomRegister reg;
  EmbedStats stats;
};

// Full pipeline: force-directed 3D layout, lattice snap, edge routing,
// detuning assignment. Routing failures retry at scale+1 up to
// max_scale_retries. For graphs with at most kEncodingCheckMaxN vertices the
// exact oracle additionally screens each candidate geometry; layouts whose
// ground state fails to encode the MIS are retried, first with the global
// detuning raised (up to 0.45 U, still inside every chain's admissible
// window), then with fresh layout seeds and larger scales, before falling
// back to the first routable geometry. The returned register's params carry
// whichever detuning the accepted attempt used.
EmbedResult embed_graph(const Graph& g, const EmbedOptions& opt);

struct BenchRecord {
  int n = 0;
  double p = 0.0;
  int samples = 0;   // successful embeddings entering the statistics
  double mean_n_plus = 0.0;
  double std_n_plus = 0.0;
  double mean_runtime = 0.0;  // seconds
  int failures = 0;
};

struct BenchFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  BenchFit fit;  // OLS of mean_n_plus against n
  int total_failures = 0;
};

// For each size: `samples` random degree-capped graphs, one embedding each.
// Instances run in parallel; records are assembled in (size, sample) order,
// so everything except the runtime column is reproducible bit-for-bit.
// Failed embeddings are excluded from the statistics and counted.
BenchResult run_bench(const std::vector<int>& sizes, double p, int samples,
                      uint64_t seed, const EmbedOptions& base);

std::string bench_csv(const BenchResult& r);

} // namespace mis3d
