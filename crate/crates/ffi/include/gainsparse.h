#ifndef GAINSPARSE_H
#define GAINSPARSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GsFamily {
  GS_FAMILY_ROSS = 0,
  GS_FAMILY_CONE = 1,
  GS_FAMILY_CYLINDER = 2,
  GS_FAMILY_COLORED_LAMAN = 3,
} GsFamily;

typedef enum GsMethod {
  GS_METHOD_AUTO = 0,
  GS_METHOD_BRUTE = 1,
  GS_METHOD_LIFT = 2,
} GsMethod;

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_ARGUMENT = 1,
  GS_STATUS_INVALID_UTF8 = 2,
  GS_STATUS_PARSE = 3,
  GS_STATUS_USAGE = 4,
  GS_STATUS_UNSUPPORTED_GROUP = 5,
  GS_STATUS_BUDGET = 6,
  GS_STATUS_PRECONDITION = 7,
  GS_STATUS_INVALID_MOVE = 8,
  GS_STATUS_CERTIFICATE_INVALID = 9,
  GS_STATUS_INTERNAL = 10,
  GS_STATUS_PANIC = 11,
} GsStatus;

typedef enum GsVerdict {
  GS_VERDICT_SPARSE = 0,
  GS_VERDICT_TIGHT = 1,
  GS_VERDICT_VIOLATION = 2,
} GsVerdict;

// Opaque construction certificate.
typedef struct GsCertificate GsCertificate;

// Opaque colored graph.
typedef struct GsGraph GsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *gs_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gs_string_free(char *s);

// Parses the colored-graph text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum GsStatus gs_graph_parse(const char *text, struct GsGraph **out);

// # Safety
// `g` must come from this library and not have been freed. NULL is ignored.
void gs_graph_free(struct GsGraph *g);

// # Safety
// `g` must be a live handle or NULL.
size_t gs_graph_vertex_count(const struct GsGraph *g);

// # Safety
// `g` must be a live handle or NULL.
size_t gs_graph_edge_count(const struct GsGraph *g);

// Serializes a graph to the text format.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GsStatus gs_graph_to_string(const struct GsGraph *g, char **out);

// Checks sparsity for a family. `verdict` receives the outcome; when
// `report` is non-NULL it receives the `SPARSE`/`TIGHT`/`VIOLATION ...` line.
//
// # Safety
// `g` must be a live handle; `verdict` must be writable; `report` may be NULL.
enum GsStatus gs_check(const struct GsGraph *g,
                       enum GsFamily family,
                       enum GsMethod method,
                       enum GsVerdict *verdict,
                       char **report);

// Builds the symmetric cover and returns it in the multigraph text format.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GsStatus gs_lift_to_string(const struct GsGraph *g, char **out);

// Reduces a tight graph to its base. Fails with `PRECONDITION` when the
// graph is not tight for the family.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum GsStatus gs_deconstruct(const struct GsGraph *g,
                             enum GsFamily family,
                             struct GsCertificate **out);

// Seeded random certificate with `steps` moves. `group` is a group spec
// such as `Z/5`, or NULL for the family default.
//
// # Safety
// `group` must be NULL or NUL-terminated; `out` must be writable.
enum GsStatus gs_construct(enum GsFamily family,
                           const char *group,
                           size_t steps,
                           uint64_t seed,
                           struct GsCertificate **out);

// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum GsStatus gs_certificate_parse(const char *text, struct GsCertificate **out);

// # Safety
// `c` must come from this library and not have been freed. NULL is ignored.
void gs_certificate_free(struct GsCertificate *c);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum GsStatus gs_certificate_to_string(const struct GsCertificate *c, char **out);

// Replays a certificate. On `CERTIFICATE_INVALID`, `failed_step` (if
// non-NULL) receives the step index: 0 for the base, i for the i-th move.
// On success `graph` (if non-NULL) receives the final graph.
//
// # Safety
// `c` must be a live handle; `graph` and `failed_step` may be NULL.
enum GsStatus gs_certificate_verify(const struct GsCertificate *c,
                                    struct GsGraph **graph,
                                    size_t *failed_step);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAINSPARSE_H */
