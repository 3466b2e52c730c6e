/*
 * C interface to the L1 prominence library.
 *
 * Objects are opaque handles created by *_build / *_load / *_compute /
 * *_parse functions and released with the matching *_free. Every fallible
 * call returns an l1p_status; on failure l1p_last_error() describes the
 * problem (the message is thread-local and valid until the next call on the
 * same thread). Output arrays are caller-allocated with the documented size.
 * Vertex indices are 0-based and follow the graph's vertex order.
 */
#ifndef L1PROM_H
#define L1PROM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(L1PROM_BUILDING)
#    define L1PROM_API __declspec(dllexport)
#  else
#    define L1PROM_API __declspec(dllimport)
#  endif
#else
#  define L1PROM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum l1p_status {
  L1P_OK = 0,
  L1P_INVALID_ARGUMENT = 1,
  L1P_NON_POSITIVE_EDGE_WEIGHT,
  L1P_NEGATIVE_MULTIPLICITY,
  L1P_ZERO_TOTAL_MULTIPLICITY,
  L1P_DUPLICATE_EDGE,
  L1P_SELF_LOOP_EDGE,
  L1P_UNKNOWN_VERTEX_NAME,
  L1P_DUPLICATE_VERTEX_NAME,
  L1P_EMPTY_VERTEX_NAME,
  L1P_ISOLATED_VERTEX,
  L1P_NOT_STRONGLY_CONNECTED,
  L1P_DEGENERATE_GRAPH,
  L1P_DIMENSION_MISMATCH,
  L1P_NO_CONVERGENCE,
  L1P_NEIGHBORHOOD_TOO_SMALL,
  L1P_EMPTY_INPUT,
  L1P_CONSTANT_INPUT,
  L1P_LENGTH_MISMATCH,
  L1P_TOO_FEW_VALUES,
  L1P_MISSING_MARGINS,
  L1P_MALFORMED_ROW,
  L1P_NEGATIVE_COUNT,
  L1P_EMPTY_AFTER_FILTER,
  L1P_IO_ERROR,
  L1P_INTERNAL_ERROR = 100
} l1p_status;

typedef enum l1p_kind { L1P_PRESTIGE = 0, L1P_CENTRALITY = 1 } l1p_kind;
typedef enum l1p_direction { L1P_POSITIVE = 0, L1P_NEGATIVE = 1 } l1p_direction;
typedef enum l1p_quantile { L1P_QUANTILE_LINEAR = 0, L1P_QUANTILE_WEIBULL = 1, L1P_QUANTILE_HAZEN = 2 } l1p_quantile;

typedef struct l1p_graph l1p_graph;
typedef struct l1p_connectivity l1p_connectivity;
typedef struct l1p_distances l1p_distances;
typedef struct l1p_flows l1p_flows;
typedef struct l1p_table l1p_table;

L1PROM_API const char* l1p_version(void);
L1PROM_API const char* l1p_status_name(l1p_status status);
/* Nonzero for unreadable or syntactically malformed input. */
L1PROM_API int l1p_status_is_input_error(l1p_status status);
L1PROM_API const char* l1p_last_error(void);

/* ---- graphs ---------------------------------------------------------- */

typedef struct l1p_edge {
  const char* source;
  const char* target;
  double weight;
} l1p_edge;

/* With undirected != 0 every edge is added in both directions. */
L1PROM_API l1p_status l1p_graph_build(const char* const* names, const double* multiplicities, size_t n,
                                      const l1p_edge* edges, size_t m, int undirected, l1p_graph** out);
/* vertices_path may be NULL (all multiplicities 1). */
L1PROM_API l1p_status l1p_graph_load(const char* edges_path, const char* vertices_path, l1p_graph** out);
L1PROM_API l1p_status l1p_graph_save(const l1p_graph* g, const char* edges_path, const char* vertices_path);
L1PROM_API void l1p_graph_free(l1p_graph* g);

L1PROM_API size_t l1p_graph_vertex_count(const l1p_graph* g);
L1PROM_API size_t l1p_graph_edge_count(const l1p_graph* g);
L1PROM_API const char* l1p_graph_vertex_name(const l1p_graph* g, size_t v);
L1PROM_API l1p_status l1p_graph_find_vertex(const l1p_graph* g, const char* name, size_t* out);
/* out has vertex_count entries. */
L1PROM_API l1p_status l1p_graph_multiplicities(const l1p_graph* g, double* out);

L1PROM_API l1p_status l1p_connectivity_compute(const l1p_graph* g, l1p_connectivity** out);
L1PROM_API void l1p_connectivity_free(l1p_connectivity* c);
L1PROM_API int l1p_connectivity_strongly_connected(const l1p_connectivity* c);
L1PROM_API size_t l1p_connectivity_component_count(const l1p_connectivity* c);
L1PROM_API size_t l1p_connectivity_component_size(const l1p_connectivity* c, size_t i);
/* Members of component i, ascending; valid while c lives. */
L1PROM_API const size_t* l1p_connectivity_component(const l1p_connectivity* c, size_t i);
L1PROM_API size_t l1p_connectivity_condensation_edge_count(const l1p_connectivity* c);

/* ---- geodesic distances ---------------------------------------------- */

/* threads == 0 uses one worker per hardware thread. */
L1PROM_API l1p_status l1p_distances_compute(const l1p_graph* g, unsigned threads, l1p_distances** out);
L1PROM_API l1p_status l1p_distances_from_matrix(const double* row_major, size_t n, l1p_distances** out);
/* Reuses cache_path when its checksum matches edges_path, otherwise
 * computes and rewrites it. *cache_hit (may be NULL) reports which. */
L1PROM_API l1p_status l1p_distances_cached(const l1p_graph* g, const char* edges_path, const char* cache_path,
                                           unsigned threads, l1p_distances** out, int* cache_hit);
L1PROM_API void l1p_distances_free(l1p_distances* d);
L1PROM_API size_t l1p_distances_size(const l1p_distances* d);
L1PROM_API double l1p_distances_at(const l1p_distances* d, size_t i, size_t j);
L1PROM_API l1p_status l1p_symmetry_constant(const l1p_distances* d, double* out);

/* ---- global measures (eta has n entries) ----------------------------- */

L1PROM_API l1p_status l1p_weighted_distance_sums(const l1p_distances* d, const double* eta, size_t n, l1p_kind kind,
                                                 double* out);
/* member_flags[i] = 1 for median vertices; tie_tolerance <= 0 selects 1e-9. */
L1PROM_API l1p_status l1p_median(const l1p_distances* d, const double* eta, size_t n, l1p_kind kind,
                                 double tie_tolerance, unsigned char* member_flags);
/* matrix_form != 0 evaluates through the explicit matrix expression. */
L1PROM_API l1p_status l1p_prominence(const l1p_distances* d, const double* eta, size_t n, double symmetry,
                                     l1p_kind kind, int matrix_form, double* out);
L1PROM_API l1p_status l1p_oracle_prominence(const l1p_distances* d, const double* eta, size_t n, double symmetry,
                                            l1p_kind kind, size_t k, double* out);

/* ---- local measures -------------------------------------------------- */

L1PROM_API l1p_status l1p_modified_multiplicities(const double* eta, size_t n, double symmetry, size_t k,
                                                  double* out);
/* member_flags and modified_values (both n entries; modified_values may be NULL). */
L1PROM_API l1p_status l1p_neighborhood(const l1p_distances* d, const double* eta, size_t n, double symmetry,
                                       l1p_kind kind, size_t k, double alpha, unsigned char* member_flags,
                                       double* modified_values);
L1PROM_API l1p_status l1p_local_prominence(const l1p_distances* d, const double* eta, size_t n, double symmetry,
                                           l1p_kind kind, double alpha, unsigned threads, double* out,
                                           size_t* clamp_events);
/* values and margins are n x grid_size row-major; margins may be NULL. */
L1PROM_API l1p_status l1p_multiscale(const l1p_distances* d, const double* eta, size_t n, double symmetry,
                                     l1p_kind kind, const double* grid, size_t grid_size, unsigned threads,
                                     double* values, double* margins, size_t* clamp_events);
/* Returns the number of grid points; writes at most capacity of them. */
L1PROM_API size_t l1p_default_alpha_grid(size_t n, double* out, size_t capacity);
/* Accepts "a,b,c" or "start:stop:step" with decimal or p/q entries. */
L1PROM_API l1p_status l1p_parse_alpha_grid(const char* text, double* out, size_t capacity, size_t* count);

/* ---- statistics ------------------------------------------------------ */

typedef struct l1p_correlation {
  double r;
  size_t n;
  double t_stat;
  double p_one_sided;
  l1p_direction direction;
} l1p_correlation;

typedef struct l1p_outlier_summary {
  double q1, q3, iqr;
  double lower_fence, upper_fence;
  size_t high_count, low_count;
} l1p_outlier_summary;

L1PROM_API l1p_status l1p_uniform_margin(const double* values, size_t n, double* out);
L1PROM_API l1p_status l1p_correlation_test(const double* x, const double* y, size_t n, l1p_direction direction,
                                           l1p_correlation* out);
/* flags (may be NULL): +1 above the upper fence, -1 below the lower, 0 otherwise. */
L1PROM_API l1p_status l1p_tukey_outliers(const double* values, size_t n, l1p_quantile method,
                                         l1p_outlier_summary* out, signed char* flags);
/* margins is n x grid_size row-major; flags[v] = 1 when max - min > threshold. */
L1PROM_API l1p_status l1p_curve_variation_screen(const double* margins, size_t n, size_t grid_size, double threshold,
                                                 unsigned char* flags);

/* ---- flow tables ----------------------------------------------------- */

typedef struct l1p_flow_filter {
  int has_age_min;
  double age_min;
  int has_age_max;
  double age_max;
  int has_hours;
  int hour_min, hour_max; /* inclusive */
  const char* const* days;
  size_t day_count;
} l1p_flow_filter;

L1PROM_API l1p_status l1p_flows_parse(const char* path, const l1p_flow_filter* filter, l1p_flows** out);
L1PROM_API void l1p_flows_free(l1p_flows* f);
L1PROM_API size_t l1p_flows_region_count(const l1p_flows* f);
L1PROM_API const char* l1p_flows_region(const l1p_flows* f, size_t i);
L1PROM_API size_t l1p_flows_record_count(const l1p_flows* f);
L1PROM_API l1p_status l1p_flows_record(const l1p_flows* f, size_t i, const char** origin, const char** destination,
                                       double* count);
/* incoming/outgoing have region_count entries; self-flows are excluded. */
L1PROM_API l1p_status l1p_flows_totals(const l1p_flows* f, double* incoming, double* outgoing);
/* hub_flags has region_count entries; the summaries may be NULL. */
L1PROM_API l1p_status l1p_flows_hubs(const l1p_flows* f, l1p_quantile method, unsigned char* hub_flags,
                                     l1p_outlier_summary* incoming, l1p_outlier_summary* outgoing);
L1PROM_API l1p_status l1p_flows_build_graph(const l1p_flows* f, l1p_graph** out);

/* ---- generic CSV tables (for reading measure files back) ------------- */

L1PROM_API l1p_status l1p_table_read(const char* path, l1p_table** out);
L1PROM_API void l1p_table_free(l1p_table* t);
L1PROM_API size_t l1p_table_column_count(const l1p_table* t);
L1PROM_API size_t l1p_table_row_count(const l1p_table* t);
L1PROM_API const char* l1p_table_header(const l1p_table* t, size_t column);
/* Index of the named column, or (size_t)-1. */
L1PROM_API size_t l1p_table_find_column(const l1p_table* t, const char* name);
L1PROM_API const char* l1p_table_cell(const l1p_table* t, size_t row, size_t column);
/* Parses a numeric cell; fails with L1P_MALFORMED_ROW naming the row. */
L1PROM_API l1p_status l1p_table_number(const l1p_table* t, size_t row, size_t column, double* out);

#ifdef __cplusplus
}
#endif

#endif /* L1PROM_H */
