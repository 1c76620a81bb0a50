/* mis3d: embed maximum-independent-set instances into 3D neutral-atom
 * registers and certify the encoding with an exact classical oracle.
 *
 * All functions returning mis3d_status report failure details through
 * mis3d_last_error() (thread-local). Strings returned through char** are
 * heap-allocated; release them with mis3d_string_free(). Handles are opaque
 * and freed with their matching *_free function.
 */
#ifndef MIS3D_H
#define MIS3D_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mis3d_status {
  MIS3D_OK = 0,
  MIS3D_ERR_INVALID_ARGUMENT = 1,
  MIS3D_ERR_PARSE = 2,
  MIS3D_ERR_DEGREE_BOUND = 3,
  MIS3D_ERR_ROUTING = 4,
  MIS3D_ERR_SIZE_LIMIT = 5,
  MIS3D_ERR_INCONSISTENT = 6,
  MIS3D_ERR_INTERNAL = 7
} mis3d_status;

typedef struct mis3d_graph mis3d_graph;
typedef struct mis3d_register mis3d_register;
typedef struct mis3d_report mis3d_report;

const char* mis3d_version(void);
/* Message for the most recent failure on this thread; never NULL. */
const char* mis3d_last_error(void);
void mis3d_string_free(char* s);

/* ---- graphs ---- */

mis3d_status mis3d_graph_parse_json(const char* json, mis3d_graph** out);
mis3d_status mis3d_graph_random(int n, double p, int max_degree,
                                uint64_t seed, mis3d_graph** out);
mis3d_status mis3d_graph_to_json(const mis3d_graph* g, char** out);
int mis3d_graph_vertex_count(const mis3d_graph* g);
int mis3d_graph_edge_count(const mis3d_graph* g);
void mis3d_graph_free(mis3d_graph* g);

/* ---- embedding ---- */

typedef struct mis3d_embed_options {
  int scale;             /* lattice clearance, >= 3 */
  uint64_t seed;
  int fr_iterations;
  double delta_global;   /* in units of U */
  double r_b;            /* blockade radius, in (1, sqrt(2)) */
  int max_scale_retries;
} mis3d_embed_options;

void mis3d_embed_options_init(mis3d_embed_options* opt);

typedef struct mis3d_embed_stats {
  int n;
  int n_plus;
  int ancillas;          /* sum of per-edge chain sizes */
  int max_chain;
  long long volume;      /* bounding-box cells */
  double wall_seconds;
  int scale_used;
  int retries;
} mis3d_embed_stats;

/* stats may be NULL if the caller does not need them. */
mis3d_status mis3d_embed(const mis3d_graph* g,
                         const mis3d_embed_options* opt,
                         mis3d_register** out, mis3d_embed_stats* stats);

/* ---- registers ---- */

mis3d_status mis3d_register_parse_json(const char* json,
                                       mis3d_register** out);
mis3d_status mis3d_register_to_json(const mis3d_register* r, char** out);
mis3d_status mis3d_register_to_xyz(const mis3d_register* r, char** out);
int mis3d_register_atom_count(const mis3d_register* r);
void mis3d_register_free(mis3d_register* r);

/* ---- certification ---- */

mis3d_status mis3d_verify(const mis3d_graph* g, const mis3d_register* r,
                          int oracle_limit, long long state_cap,
                          mis3d_report** out);

int mis3d_report_certified(const mis3d_report* rep);
double mis3d_report_min_energy(const mis3d_report* rep);
long long mis3d_report_ground_state_count(const mis3d_report* rep);
/* Borrowed pointer, valid while rep lives; NULL if i is out of range. */
const char* mis3d_report_ground_state(const mis3d_report* rep, long long i);
int mis3d_report_mis_original(const mis3d_report* rep);
int mis3d_report_mis_augmented(const mis3d_report* rep);
long long mis3d_report_half_ancillas(const mis3d_report* rep);
int mis3d_report_restriction_ok(const mis3d_report* rep);
int mis3d_report_identity_ok(const mis3d_report* rep);
mis3d_status mis3d_report_to_json(const mis3d_report* rep, char** out);
void mis3d_report_free(mis3d_report* rep);

/* ---- gadget spectrum and benchmark ---- */

mis3d_status mis3d_gadget_spectrum_csv(double spacing, double delta_global,
                                       double lo, double hi, double step,
                                       char** out);
mis3d_status mis3d_gadget_crossovers(double spacing, double delta_global,
                                     double step, double* lower,
                                     double* upper);

mis3d_status mis3d_bench_csv(const int* sizes, int n_sizes, double p,
                             int samples, uint64_t seed,
                             const mis3d_embed_options* opt, char** csv_out,
                             double* slope, double* intercept, double* r2,
                             int* failures);

#ifdef __cplusplus
}
#endif

#endif /* MIS3D_H */
