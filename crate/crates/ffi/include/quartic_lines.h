#ifndef QUARTIC_LINES_H
#define QUARTIC_LINES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QlStatus {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_POINTER = 1,
  QL_STATUS_INVALID_UTF8 = 2,
  QL_STATUS_PARSE = 3,
  QL_STATUS_INVALID_FIELD = 4,
  QL_STATUS_SINGULAR = 5,
  QL_STATUS_LINE_NOT_ON_SURFACE = 6,
  /**
   * A mathematical finding: budget violation, contradiction, pathological fibre.
   */
  QL_STATUS_FINDING = 7,
  QL_STATUS_UNSUPPORTED = 8,
  QL_STATUS_ENLARGE_FIELD = 9,
  QL_STATUS_OUT_OF_RANGE = 10,
  QL_STATUS_OTHER = 11,
  QL_STATUS_PANIC = 12,
} QlStatus;

/**
 * Result of a census.
 */
typedef struct QlCensus QlCensus;

/**
 * A quartic together with the field and job settings used for every computation on it.
 */
typedef struct QlSurface QlSurface;

/**
 * Library version, a static string.
 */
const char *ql_version(void);

/**
 * Message of the last failed call on this thread; empty after a success. Valid until the next
 * call on the same thread.
 */
const char *ql_last_error(void);

/**
 * Parse a quartic such as `"x1^4 + x2^4 + x3^4 + x4^4"`. `field` is `"Q"`, `"F p"` or
 * `"F p k"`; NULL means Q.
 *
 * # Safety
 * `quartic` and `field` must be NUL-terminated strings or NULL; `out` must be writable.
 */
enum QlStatus ql_surface_new(const char *quartic, const char *field, struct QlSurface **out);

/**
 * # Safety
 * `s` must come from [`ql_surface_new`] and not be used afterwards. NULL is ignored.
 */
void ql_surface_free(struct QlSurface *s);

/**
 * Largest extension degree of the census tower (default 4), worker threads (0 = all cores)
 * and seed.
 *
 * # Safety
 * `s` must be a live surface handle.
 */
enum QlStatus ql_surface_configure(struct QlSurface *s,
                                   uint32_t tower,
                                   uint32_t threads,
                                   uint64_t seed);

/**
 * Lines over the surface's field and its tower. Over Q the count comes from several good
 * primes and no individual lines are available.
 *
 * # Safety
 * `s` must be a live surface handle and `out` writable.
 */
enum QlStatus ql_census(const struct QlSurface *s, struct QlCensus **out);

/**
 * # Safety
 * `c` must come from [`ql_census`] and not be used afterwards. NULL is ignored.
 */
void ql_census_free(struct QlCensus *c);

/**
 * Number of lines. `QL_STATUS_FINDING` when the primes of a census over Q disagree.
 *
 * # Safety
 * `c` must be a live census handle and `out` writable.
 */
enum QlStatus ql_census_count(const struct QlCensus *c, uintptr_t *out);

/**
 * Number of individual lines held (zero for a census over Q).
 *
 * # Safety
 * `c` must be a live census handle.
 */
uintptr_t ql_census_line_count(const struct QlCensus *c);

/**
 * Pluecker coordinates of line `i`, comma separated.
 *
 * # Safety
 * `c` must be a live census handle and `out` writable.
 */
enum QlStatus ql_census_line(const struct QlCensus *c, uintptr_t i, char **out);

/**
 * The full census report as JSON.
 *
 * # Safety
 * `c` must be a live census handle and `out` writable.
 */
enum QlStatus ql_census_json(const struct QlCensus *c, char **out);

/**
 * Singular fibres of the pencil through `line` (`"L1 = L2 = 0"`), as JSON.
 *
 * # Safety
 * `s` must be a live surface handle, `line` a NUL-terminated string and `out` writable.
 */
enum QlStatus ql_fibration_json(const struct QlSurface *s, const char *line, char **out);

/**
 * Kind, ramification type and normal form of `line`, as JSON.
 *
 * # Safety
 * As for [`ql_fibration_json`].
 */
enum QlStatus ql_classify_line_json(const struct QlSurface *s, const char *line, char **out);

/**
 * Incidence graph of the lines, as JSON. With `fibrations` nonzero each degree is compared with
 * N from the line's pencil.
 *
 * # Safety
 * `s` must be a live surface handle and `out` writable.
 */
enum QlStatus ql_graph_json(const struct QlSurface *s, int32_t fibrations, char **out);

/**
 * # Safety
 * `p` must be a string returned by this library, or NULL.
 */
void ql_string_free(char *p);

#endif /* QUARTIC_LINES_H */
