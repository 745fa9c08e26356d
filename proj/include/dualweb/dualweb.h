#ifndef DUALWEB_H
#define DUALWEB_H

/* dualweb -- dual network maps of a website sample.
 *
 * Builds two parallel representations of the same set of sites: an audience
 * network whose ties are above-expected shared-visitor duplication, and a
 * hyperlink network built from directed link counts (crawled or ingested),
 * plus the analysis surface used to compare them: descriptive statistics,
 * weighted modularity communities, geo-linguistic cluster purity, QAP
 * permutation correlation, force-directed layouts and SVG rendering.
 *
 * This is the C API over the C++ core. All objects are opaque handles.
 * Every function returns a dw_status; on failure a thread-local message is
 * available through dw_last_error(). Strings returned through char** are
 * heap-allocated and must be released with dw_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DW_BUILD_SHARED)
#    define DW_API __declspec(dllexport)
#  else
#    define DW_API __declspec(dllimport)
#  endif
#else
#  define DW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dw_status {
  DW_OK = 0,
  DW_ERR_IO = 1,       /* file missing, unreadable or unwritable */
  DW_ERR_PARSE = 2,    /* malformed CSV/JSON/config input */
  DW_ERR_INVALID = 3,  /* bad argument or violated precondition */
  DW_ERR_DOMAIN = 4,   /* operation undefined for this input (e.g. zero variance) */
  DW_ERR_INTERNAL = 5
} dw_status;

DW_API const char* dw_version(void);

/* Thread-local message for the most recent failing call; empty on success. */
DW_API const char* dw_last_error(void);

DW_API void dw_string_free(char* s);

/* ---------------------------------------------------------------- nodes -- */
/* Site metadata: id, hostname patterns, languages, focal geography.
 * CSV columns: id,host_patterns(;-separated),languages(;-separated),geography
 * Geography "GLOBAL" marks sites without an establishable focal geography. */

typedef struct dw_nodeset dw_nodeset;

DW_API dw_status dw_nodeset_load_csv(const char* path, dw_nodeset** out);
DW_API dw_status dw_nodeset_size(const dw_nodeset* ns, size_t* out);
DW_API dw_status dw_nodeset_id(const dw_nodeset* ns, size_t index, const char** out);
DW_API dw_status dw_nodeset_geography(const dw_nodeset* ns, const char* id, const char** out);
/* Longest-suffix host-pattern match for an absolute URL; *out_id is NULL when
 * no seed matches. The returned pointer lives as long as the nodeset. */
DW_API dw_status dw_nodeset_resolve_url(const dw_nodeset* ns, const char* url, const char** out_id);
DW_API void dw_nodeset_free(dw_nodeset* ns);

/* --------------------------------------------------------------- graphs -- */
/* Undirected graph over an ordered node-id list with a symmetric nonnegative
 * weight matrix and zero diagonal. JSON form: {"nodes":[...],"weights":[[...]]}.
 * Edge CSV form: src,dst,weight with one row per undirected tie, src < dst. */

typedef struct dw_graph dw_graph;

DW_API dw_status dw_graph_load_json(const char* path, dw_graph** out);
DW_API dw_status dw_graph_save_json(const dw_graph* g, const char* path);
DW_API dw_status dw_graph_save_edge_csv(const dw_graph* g, const char* path);
DW_API dw_status dw_graph_node_count(const dw_graph* g, size_t* out);
DW_API dw_status dw_graph_node_id(const dw_graph* g, size_t index, const char** out);
DW_API dw_status dw_graph_weight(const dw_graph* g, size_t i, size_t j, double* out);
DW_API dw_status dw_graph_tie_count(const dw_graph* g, size_t* out);
DW_API dw_status dw_graph_dichotomize(const dw_graph* g, dw_graph** out);
/* Restrict both graphs to their common node ids (identical ordering in both
 * outputs). Fails with DW_ERR_INVALID when the intersection is empty. */
DW_API dw_status dw_graph_align_common(const dw_graph* a, const dw_graph* b,
                                       dw_graph** out_a, dw_graph** out_b);
DW_API void dw_graph_free(dw_graph* g);

/* ------------------------------------------------------ network builders -- */

/* Visitation log CSV (user_id,site_id) + panel JSON ({"universe_size":N,
 * "window":"..."}) -> audience graph. A tie exists only where observed
 * duplication exceeds the independence expectation by more than min_margin;
 * its weight is the excess. */
DW_API dw_status dw_build_audience(const char* metadata_csv, const char* log_csv,
                                   const char* panel_json, double min_margin,
                                   const char* out_graph_json);

typedef enum dw_symmetrize_rule {
  DW_SYMMETRIZE_SUM = 0, /* weight(i,j) = counts(i,j) + counts(j,i) */
  DW_SYMMETRIZE_MAX = 1,
  DW_SYMMETRIZE_OR = 2   /* 1 when at least one link in either direction */
} dw_symmetrize_rule;

/* Directed edge-list CSV (src,dst,count) -> undirected hyperlink graph.
 * ingest_report_json is optional (NULL to skip). */
DW_API dw_status dw_build_hyperlink(const char* metadata_csv, const char* edges_csv,
                                    dw_symmetrize_rule rule, const char* out_graph_json,
                                    const char* ingest_report_json);

/* Polite seed-set crawl per a JSON config (see README for the schema);
 * writes the directed inter-seed edge list and a crawl report. */
DW_API dw_status dw_crawl(const char* config_json, const char* out_edges_csv,
                          const char* out_report_json);

/* -------------------------------------------------------------- metrics -- */

typedef enum dw_clustering {
  DW_CLUSTERING_AVG_LOCAL = 0,
  DW_CLUSTERING_TRANSITIVITY = 1
} dw_clustering;

typedef enum dw_centralization {
  DW_CENTRALIZATION_FREEMAN = 0,
  DW_CENTRALIZATION_HHI = 1
} dw_centralization;

/* Descriptive statistics of the dichotomized view of g as a JSON string. */
DW_API dw_status dw_metrics(const dw_graph* g, dw_clustering cvar,
                            dw_centralization zvar, char** out_stats_json);
/* Same, written to files; out_ccdf_csv and out_plot_svg may be NULL. */
DW_API dw_status dw_metrics_to_files(const dw_graph* g, dw_clustering cvar,
                                     dw_centralization zvar, const char* out_stats_json,
                                     const char* out_ccdf_csv, const char* out_plot_svg);

/* ---------------------------------------------------------- communities -- */

typedef struct dw_partition dw_partition;

/* Weighted Louvain modularity maximization; deterministic per (seed, restarts). */
DW_API dw_status dw_communities(const dw_graph* g, uint64_t seed, double resolution,
                                int restarts, dw_partition** out);
DW_API dw_status dw_partition_load_json(const char* path, dw_partition** out);
DW_API dw_status dw_partition_save_json(const dw_partition* p, const char* path);
DW_API dw_status dw_partition_q(const dw_partition* p, double* out);
DW_API dw_status dw_partition_community_count(const dw_partition* p, size_t* out);
DW_API dw_status dw_partition_community_of(const dw_partition* p, const char* node_id, int* out);
DW_API void dw_partition_free(dw_partition* p);

typedef enum dw_purity_attribute {
  DW_PURITY_GEOGRAPHY = 0, /* GLOBAL nodes excluded from denominators */
  DW_PURITY_LANGUAGE = 1
} dw_purity_attribute;

/* Per-cluster modal-attribute purity plus the size-weighted mean, as JSON. */
DW_API dw_status dw_cluster_purity(const dw_partition* p, const dw_nodeset* ns,
                                   dw_purity_attribute attr, char** out_json);

/* ------------------------------------------------------------------ QAP -- */

typedef enum dw_qap_tail {
  DW_QAP_TWO_SIDED = 0,
  DW_QAP_GREATER = 1,
  DW_QAP_LESS = 2
} dw_qap_tail;

typedef enum dw_qap_transform {
  DW_QAP_TRANSFORM_NONE = 0,
  DW_QAP_TRANSFORM_LOG1P = 1,
  DW_QAP_TRANSFORM_RANK = 2
} dw_qap_transform;

/* QAP correlation between two graphs' tie matrices. Graphs with differing
 * node sets are aligned to their common nodes first. Enumerates all
 * relabelings when n! <= 50000, Monte Carlo otherwise. Result JSON carries
 * r_observed, p_value, n_permutations, seed, tail, n_nodes. */
DW_API dw_status dw_qap(const dw_graph* a, const dw_graph* b, int n_permutations,
                        uint64_t seed, dw_qap_tail tail, dw_qap_transform transform,
                        char** out_json);

/* --------------------------------------------------------------- layout -- */

typedef struct dw_layout dw_layout;

/* Fruchterman-Reingold layout inside a [0,width]x[0,height] frame;
 * bit-for-bit deterministic per seed. */
DW_API dw_status dw_layout_compute(const dw_graph* g, int iterations, uint64_t seed,
                                   double width, double height, dw_layout** out);
DW_API dw_status dw_layout_load_json(const char* path, dw_layout** out);
DW_API dw_status dw_layout_save_json(const dw_layout* l, const char* path);
DW_API dw_status dw_layout_position(const dw_layout* l, const char* node_id,
                                    double* out_x, double* out_y);
DW_API void dw_layout_free(dw_layout* l);

/* SVG map: node fill = geography (GLOBAL gray), node label = community id,
 * edges down-sampled to the top edge_quantile weight share. */
DW_API dw_status dw_render_svg(const dw_graph* g, const dw_layout* l,
                               const dw_partition* p, const dw_nodeset* ns,
                               double edge_quantile, const char* out_svg);

/* ------------------------------------------------- synthetic + pipeline -- */

/* Seeded paired dataset generator (blocked audience behavior + preferential-
 * attachment hyperlinking); writes nodes.csv, visits.csv, panel.json and
 * edges.csv into out_dir. config_json is the generator config text. */
DW_API dw_status dw_synth(const char* config_json, const char* out_dir);

/* One-shot pipeline: (optional synth ->) builders -> alignment -> metrics ->
 * communities -> purity -> QAP -> layouts + SVGs; writes every artifact plus
 * report.json into out_dir. Deterministic per config+seed. When
 * out_report_json is non-NULL it receives the report text. */
DW_API dw_status dw_reproduce(const char* config_json, const char* out_dir,
                              char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* DUALWEB_H */
