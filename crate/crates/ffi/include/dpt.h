#ifndef DPT_H
#define DPT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DptPolicy {
  DPT_POLICY_LINKING_ADJACENCY = 0,
  DPT_POLICY_CROSSING_ADJACENCY = 1,
} DptPolicy;

typedef enum DptStatus {
  DPT_STATUS_OK = 0,
  DPT_STATUS_NULL_ARGUMENT = 1,
  DPT_STATUS_INVALID_UTF8 = 2,
  DPT_STATUS_PARSE_ERROR = 3,
  DPT_STATUS_INVALID_DIAGRAM = 4,
  DPT_STATUS_INAPPLICABLE = 5,
  DPT_STATUS_UNDETERMINED = 6,
  DPT_STATUS_NOT_FOUND = 7,
  DPT_STATUS_INTERNAL = 8,
} DptStatus;

/**
 * Opaque motif handle.
 */
typedef struct DptMotif DptMotif;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a motif file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DptStatus dpt_motif_from_json(const char *json, struct DptMotif **out);

/**
 * Loads a built-in catalog motif by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum DptStatus dpt_motif_from_catalog(const char *name, struct DptMotif **out);

/**
 * # Safety
 * `m` must be null or a handle from this library that was not yet freed.
 */
void dpt_motif_free(struct DptMotif *m);

/**
 * Serializes the motif; free the result with `dpt_string_free`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum DptStatus dpt_motif_to_json(const struct DptMotif *m, char **out);

/**
 * The structured invariant report as JSON; free with `dpt_string_free`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum DptStatus dpt_motif_report_json(const struct DptMotif *m, enum DptPolicy policy, char **out);

/**
 * Number of distinct directions; `Undetermined` when a cluster is too large.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum DptStatus dpt_motif_direction_count(const struct DptMotif *m,
                                         enum DptPolicy policy,
                                         size_t *out);

/**
 * New motif under the basis change `[[m11, m12], [m21, m22]]`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum DptStatus dpt_motif_rebase(const struct DptMotif *m,
                                int64_t m11,
                                int64_t m12,
                                int64_t m21,
                                int64_t m22,
                                bool allow_reflection,
                                struct DptMotif **out);

/**
 * New motif: the cover for the sublattice spanned by the columns of `l`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum DptStatus dpt_motif_cover(const struct DptMotif *m,
                               int64_t l11,
                               int64_t l12,
                               int64_t l21,
                               int64_t l22,
                               struct DptMotif **out);

/**
 * Message for the last failed call on this thread, or null. The caller owns
 * the copy and frees it with `dpt_string_free`.
 */
char *dpt_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void dpt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPT_H */
