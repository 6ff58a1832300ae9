/*
 * netfp: structural fingerprints of networks.
 *
 * C interface to the netfp library. Every object is an opaque handle owned
 * by the caller and released with its _free function. Functions return a
 * netfp_status; on failure netfp_last_error() describes the problem for the
 * calling thread until its next netfp call.
 */
#ifndef NETFP_NETFP_H
#define NETFP_NETFP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NETFP_API __declspec(dllexport)
#else
#define NETFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum netfp_status {
  NETFP_OK = 0,
  NETFP_ERR_INVALID_ARGUMENT = 1,
  NETFP_ERR_PARSE = 2,
  NETFP_ERR_REFERENCE = 3,
  NETFP_ERR_IO = 4,
  NETFP_ERR_DATA = 5,
  NETFP_ERR_INTERNAL = 6
} netfp_status;

#define NETFP_MOTIF_COUNT 6

NETFP_API const char* netfp_version(void);
NETFP_API const char* netfp_status_name(netfp_status status);
NETFP_API const char* netfp_last_error(void);

/* Strings returned by the library are released with netfp_string_free. */
NETFP_API void netfp_string_free(char* text);

/* ---- graphs -------------------------------------------------------------- */

typedef struct netfp_graph netfp_graph;

typedef struct netfp_simplify_report {
  size_t self_loops;
  size_t multi_edges;
  size_t zero_weight;
} netfp_simplify_report;

/* pairs holds 2 * edge_count node indices. Loops and repeats are rejected. */
NETFP_API netfp_status netfp_graph_from_edges(size_t node_count, const uint32_t* pairs,
                                              size_t edge_count, netfp_graph** out);

/* Parses one GML document and reduces it to a simple graph. report may be NULL. */
NETFP_API netfp_status netfp_graph_parse_gml(const char* text, size_t length,
                                             netfp_graph** out,
                                             netfp_simplify_report* report);
NETFP_API netfp_status netfp_graph_load_gml(const char* path, netfp_graph** out,
                                            netfp_simplify_report* report);

/* Canonical GML; *text is NUL-terminated and *length excludes the NUL. */
NETFP_API netfp_status netfp_graph_write_gml(const netfp_graph* graph, char** text,
                                             size_t* length);

/* model: "er" | "ws" | "ba" | "ff"; params: "key=value,..." as on the CLI. */
NETFP_API netfp_status netfp_graph_generate(const char* model, const char* params,
                                            uint64_t seed, size_t index,
                                            netfp_graph** out);

NETFP_API void netfp_graph_free(netfp_graph* graph);

NETFP_API size_t netfp_graph_node_count(const netfp_graph* graph);
NETFP_API size_t netfp_graph_edge_count(const netfp_graph* graph);
NETFP_API netfp_status netfp_graph_degree(const netfp_graph* graph, size_t node,
                                          size_t* degree);

/* Copies min(capacity, edge_count) edges as (u, v) pairs with u < v. */
NETFP_API netfp_status netfp_graph_edges(const netfp_graph* graph, uint32_t* pairs,
                                         size_t capacity);

NETFP_API netfp_status netfp_graph_rewire(const netfp_graph* graph, size_t swaps,
                                          uint64_t seed, netfp_graph** out);

/* ---- features ------------------------------------------------------------ */

NETFP_API netfp_status netfp_graph_clustering(const netfp_graph* graph, double* value);

/* *defined is set to 0 when the coefficient does not exist (no edges, or
 * every edge end has the same degree); *value is then 0. */
NETFP_API netfp_status netfp_graph_assortativity(const netfp_graph* graph, double* value,
                                                 int* defined);

/* Order: clique, diamond, paw, 4-cycle, 3-star, 4-path. */
NETFP_API netfp_status netfp_graph_motif_census(const netfp_graph* graph, int induced,
                                                uint64_t counts[NETFP_MOTIF_COUNT]);

typedef struct netfp_profile_options {
  size_t ensemble_size;  /* default 100, at least 2 */
  size_t swaps_per_edge; /* default 10 */
  uint64_t seed;
  int non_induced;  /* 0: induced census (default) */
  int squared_norm; /* 0: divide z by its Euclidean norm (default) */
  unsigned threads; /* workers over ensemble members; 0 = all cores */
} netfp_profile_options;

NETFP_API void netfp_profile_options_init(netfp_profile_options* options);

typedef struct netfp_feature_vector {
  double clustering;
  double assortativity;
  int assortativity_defined;
  double sp[NETFP_MOTIF_COUNT];
} netfp_feature_vector;

NETFP_API netfp_status netfp_graph_featurize(const netfp_graph* graph,
                                             const netfp_profile_options* options,
                                             netfp_feature_vector* out);

/* ---- pipeline commands --------------------------------------------------- */

/* Runs gen | featurize | importance | classify | communities | all with a JSON
 * object of settings. *summary (may be NULL) receives a JSON summary. */
NETFP_API netfp_status netfp_run(const char* command, const char* config_json,
                                 char** summary);

#ifdef __cplusplus
}
#endif

#endif /* NETFP_NETFP_H */
