/* C interface to the entangled-graph toolkit.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns an eg_status; on failure eg_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are NUL-terminated JSON/CSV/DOT text owned
 * by the caller and released with eg_string_free.
 */
#ifndef EGRAPH_EGRAPH_H_
#define EGRAPH_EGRAPH_H_

#include <stdint.h>

#if defined(_WIN32)
#if defined(EGRAPH_BUILDING_DLL)
#define EG_API __declspec(dllexport)
#else
#define EG_API __declspec(dllimport)
#endif
#else
#define EG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eg_status {
  EG_OK = 0,
  EG_ERR_INVALID_ARGUMENT = 1,
  EG_ERR_INVALID_GRAPH = 2,
  EG_ERR_INVALID_STATE = 3,
  EG_ERR_CAP_EXCEEDED = 4,
  EG_ERR_PARSE = 5,
  EG_ERR_INTERNAL = 6
} eg_status;

typedef enum eg_state_kind {
  EG_STATE_PURE = 0,
  EG_STATE_DENSE = 1,
  EG_STATE_EXCITATION = 2
} eg_state_kind;

/* Mirrors the feasibility status order: a graph is as feasible as its least
 * feasible component. */
typedef enum eg_feasibility {
  EG_INFEASIBLE = 0,
  EG_UNKNOWN = 1,
  EG_FEASIBLE_NUMERICAL_CLAIM = 2,
  EG_FEASIBLE_CATALOG = 3,
  EG_FEASIBLE_CONSTRUCTIVE = 4
} eg_feasibility;

typedef struct eg_graph eg_graph;
typedef struct eg_state eg_state;

typedef struct eg_tolerances {
  double entanglement;
  double factorization;
} eg_tolerances;

typedef struct eg_assess_options {
  int search;           /* nonzero: search on R7/R8 components */
  uint64_t seed;
  int jobs;
  eg_tolerances tol;
  const char* search_config_json; /* optional overrides, may be NULL */
} eg_assess_options;

EG_API const char* eg_version(void);
EG_API const char* eg_last_error(void);
EG_API void eg_string_free(char* s);

EG_API eg_tolerances eg_default_tolerances(void);
EG_API eg_assess_options eg_default_assess_options(void);

/* graphs */
EG_API eg_status eg_graph_from_json(const char* json, eg_graph** out);
EG_API eg_status eg_graph_to_json(const eg_graph* g, char** out);
EG_API eg_status eg_graph_to_dot(const eg_graph* g, char** out);
/* report: {"valid": bool, "violations": [...]}; succeeds for invalid graphs */
EG_API eg_status eg_graph_validate(const eg_graph* g, char** report_json);
EG_API eg_status eg_graph_canonical_label(const eg_graph* g, char** label);
EG_API int eg_graph_vertex_count(const eg_graph* g);
EG_API void eg_graph_free(eg_graph* g);

/* states */
EG_API eg_status eg_state_from_json(const char* json, eg_state** out);
EG_API eg_status eg_state_to_json(const eg_state* s, char** out);
EG_API eg_state_kind eg_state_get_kind(const eg_state* s);
EG_API int eg_state_qubit_count(const eg_state* s);
/* summary: trace, hermiticity and positivity checks as JSON */
EG_API eg_status eg_state_check(const eg_state* s, char** summary_json);
EG_API void eg_state_free(eg_state* s);

/* construction */
EG_API eg_status eg_build_mixed(const eg_graph* g, eg_state** out);
EG_API eg_status eg_expand_dense(const eg_state* s, eg_state** out);
EG_API eg_status eg_catalog_state(char label, eg_state** out);
EG_API eg_status eg_realize_web(const eg_graph* g, const eg_tolerances* tol, eg_state** out, char** parameters_json);

/* analysis: graph_out and report_json may be NULL when not wanted */
EG_API eg_status eg_classify(const eg_state* s, const eg_tolerances* tol, eg_graph** graph_out, char** report_json);

/* feasibility: witness_out receives NULL when no witness exists */
EG_API eg_status eg_assess(const eg_graph* g, const eg_assess_options* opts, eg_feasibility* status_out,
                           char** verdict_json, eg_state** witness_out);
EG_API eg_status eg_census(int n, const eg_tolerances* tol, char** csv, char** summary_json, char** witnesses_json);

/* search: config_json may be NULL for the size-scaled defaults */
EG_API eg_status eg_search(const eg_graph* g, const char* config_json, int* found_out, char** result_json,
                           eg_state** witness_out);

#ifdef __cplusplus
}
#endif

#endif /* EGRAPH_EGRAPH_H_ */
