#ifndef SIGMAPOLY_H
#define SIGMAPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_UTF8 = 2,
  SP_STATUS_SYNTAX = 3,
  SP_STATUS_NEGATIVE_INDEX = 4,
  SP_STATUS_ZERO_DENOMINATOR = 5,
  SP_STATUS_INDEX_OVERFLOW = 6,
  SP_STATUS_CONTRACT = 7,
  SP_STATUS_INTERNAL = 8,
  SP_STATUS_PANIC = 9,
} SpStatus;

/**
 * Opaque polynomial handle.
 */
typedef struct SpPoly SpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *sp_version(void);

/**
 * Message for the last failed call on this thread, empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *sp_last_error(void);

/**
 * Parses `text` in the polynomial grammar.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SpStatus sp_poly_parse(const char *text, struct SpPoly **out);

/**
 * Canonical text form of `p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_poly_format(const struct SpPoly *p, char **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void sp_poly_free(struct SpPoly *p);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void sp_string_free(char *s);

/**
 * `u(n)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_make_u(uint32_t n, struct SpPoly **out);

/**
 * `A(n)`, `n >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_make_a(uint32_t n, struct SpPoly **out);

/**
 * `sigma^k(p)`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_poly_shift(const struct SpPoly *p, size_t k, struct SpPoly **out);

/**
 * `a + b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SpStatus sp_poly_add(const struct SpPoly *a, const struct SpPoly *b, struct SpPoly **out);

/**
 * `a * b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SpStatus sp_poly_mul(const struct SpPoly *a, const struct SpPoly *b, struct SpPoly **out);

/**
 * Writes 1 to `out` if `a == b`, else 0.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SpStatus sp_poly_equal(const struct SpPoly *a, const struct SpPoly *b, int *out);

/**
 * Largest effective order over the terms of `p`. Contract error for zero.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_poly_max_eord(const struct SpPoly *p, size_t *out);

/**
 * Degree-2 slice membership of `q` against `[A(1), ..., A(m)]`. Writes 1 or 0
 * to `is_member` and, if `certificate_json` is not null, the certificate.
 *
 * # Safety
 * `q` must be a live handle; `is_member` must be writable.
 */
enum SpStatus sp_slice_membership(const struct SpPoly *q,
                                  uint32_t m,
                                  int *is_member,
                                  char **certificate_json);

/**
 * Exact rank of the Gram matrix of the homogeneous quadratic `q`.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_gram_rank(const struct SpPoly *q, size_t *out);

/**
 * Factorization verdict for `q` as JSON.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_factor_quadratic(const struct SpPoly *q, char **out);

/**
 * Chain certificates for `m = 1..=m_max` as a JSON array.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_acc_chain_json(uint32_t m_max, char **out);

/**
 * Runs the command line `sigmapoly argv[0] ... argv[argc-1]` in process.
 * Standard output goes to `out_stdout`, standard error to `out_stderr` (either
 * may be null) and the process exit code to `out_exit`.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; `out_exit` must be writable.
 */
enum SpStatus sp_run_cli(int argc,
                         const char *const *argv,
                         char **out_stdout,
                         char **out_stderr,
                         int *out_exit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGMAPOLY_H */
