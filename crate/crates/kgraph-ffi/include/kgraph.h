#ifndef KGRAPH_H
#define KGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum KgStatus {
  KG_STATUS_OK = 0,
  KG_STATUS_NULL_POINTER = 1,
  KG_STATUS_INVALID_UTF8 = 2,
  KG_STATUS_PARSE = 3,
  KG_STATUS_INVALID_GRAPH = 4,
  KG_STATUS_UNKNOWN_FIXTURE = 5,
  KG_STATUS_NOT_STRICT = 6,
  KG_STATUS_NOT_INTERTWINING = 7,
  KG_STATUS_DOMAIN = 8,
  KG_STATUS_PANIC = 9,
} KgStatus;

// Opaque validated k-graph.
typedef struct KgGraph KgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread (empty if none). The
// pointer stays valid until the next call into this library on the thread.
const char *kg_last_error(void);

// Parse and validate a graph document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum KgStatus kg_graph_from_json(const char *json, struct KgGraph **out);

// Load a bundled example graph by name.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a writable pointer.
enum KgStatus kg_graph_fixture(const char *name, struct KgGraph **out);

// Release a graph handle. Null is ignored.
//
// # Safety
// `g` must be null or a handle from this library not yet freed.
void kg_graph_free(struct KgGraph *g);

// The rank k of the graph.
//
// # Safety
// `g` must be a live handle and `out` a writable pointer.
enum KgStatus kg_graph_rank(const struct KgGraph *g, size_t *out);

// Number of vertices.
//
// # Safety
// `g` must be a live handle and `out` a writable pointer.
enum KgStatus kg_graph_vertex_count(const struct KgGraph *g, size_t *out);

// Rational rank of the dimension group.
//
// # Safety
// `g` must be a live handle and `out` a writable pointer.
enum KgStatus kg_rank_invariant(const struct KgGraph *g, size_t *out);

// Zeroth homology as text, e.g. `rank 0, torsion [3]`.
//
// # Safety
// `g` must be a live handle and `out` a writable pointer.
enum KgStatus kg_h0(const struct KgGraph *g, char **out);

// Search for coherent flips for the matrix (rows split by `;`). Writes
// `exhausted <count>` or `found` followed by one flip per line.
//
// # Safety
// `lambda`, `omega` must be live handles, `matrix` a NUL-terminated string
// and `out` a writable pointer.
enum KgStatus kg_bridge_search(const struct KgGraph *lambda,
                               const struct KgGraph *omega,
                               const char *matrix,
                               char **out);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void kg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KGRAPH_H */
