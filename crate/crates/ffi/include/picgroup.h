#ifndef PICGROUP_H
#define PICGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_POINTER = 1,
  PG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed quiver text, root list or style.
   */
  PG_STATUS_PARSE = 3,
  /**
   * The quiver is not of finite type.
   */
  PG_STATUS_NOT_FINITE_TYPE = 4,
  /**
   * A vector is not a root, repeats, or the set is unsuitable for the request.
   */
  PG_STATUS_INVALID_ROOTS = 5,
  /**
   * A word, path or root limit was exceeded.
   */
  PG_STATUS_OVERFLOW = 6,
  /**
   * A check ran to completion and failed.
   */
  PG_STATUS_VERIFICATION_FAILED = 7,
  /**
   * Representation-theoretic data could not be computed.
   */
  PG_STATUS_REPRESENTATION = 8,
  /**
   * A Rust panic was caught at the boundary.
   */
  PG_STATUS_INTERNAL = 9,
} PgStatus;

/**
 * A quiver with its positive roots and hom/ext table.
 */
typedef struct PgContext PgContext;

/**
 * Counts from comparing green sequences with the Coxeter-element closure.
 */
typedef struct {
  size_t compartments;
  size_t mgs;
  size_t closure;
  bool passed;
} PgTheoremA;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *pg_version(void);

/**
 * Message of the last failed call on this thread; empty after a success. Valid until the next call.
 */
const char *pg_last_error(void);

/**
 * Parses quiver text and builds the root and hom tables.
 *
 * # Safety
 * `quiver_text` is a NUL-terminated string and `out` is writable.
 */
PgStatus pg_context_new(const char *quiver_text, uint64_t seed, PgContext **out);

/**
 * Releases a context. Null is ignored.
 *
 * # Safety
 * `ctx` is null or was returned by [`pg_context_new`] and not freed before.
 */
void pg_context_free(PgContext *ctx);

/**
 * Number of positive roots.
 *
 * # Safety
 * `ctx` is a live context and `out` is writable.
 */
PgStatus pg_root_count(const PgContext *ctx, size_t *out);

/**
 * Generators and relations in the `gen`/`rel` line format.
 *
 * # Safety
 * `ctx` is a live context, `roots` is null or a string, `out` is writable.
 */
PgStatus pg_presentation(const PgContext *ctx, const char *roots, char **out);

/**
 * Number of compartments of the arrangement.
 *
 * # Safety
 * `ctx` is a live context, `roots` is null or a string, `out` is writable.
 */
PgStatus pg_compartment_count(const PgContext *ctx, const char *roots, size_t *out);

/**
 * Number of maximal green sequences, failing with `Overflow` beyond `max_paths`.
 *
 * # Safety
 * `ctx` is a live context, `roots` is null or a string, `out` is writable.
 */
PgStatus pg_mgs_count(const PgContext *ctx, const char *roots, size_t max_paths, size_t *out);

/**
 * Compares sequence words with the rewrite closure of the Coxeter element.
 * Fills `out` and returns `VerificationFailed` when the two sets differ.
 *
 * # Safety
 * `ctx` is a live context, `roots` is null or a string, `out` is writable.
 */
PgStatus pg_verify_theorem_a(const PgContext *ctx,
                             const char *roots,
                             size_t max_words,
                             size_t max_paths,
                             PgTheoremA *out);

/**
 * SVG of the rank-three picture. `style` is null or `key=value` entries.
 *
 * # Safety
 * `ctx` is a live context, `roots` and `style` are null or strings, `out` is writable.
 */
PgStatus pg_render_picture_svg(const PgContext *ctx,
                               const char *roots,
                               const char *style,
                               char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or came from this library and was not freed before.
 */
void pg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PICGROUP_H */
