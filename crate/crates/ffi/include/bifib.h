#ifndef BIFIB_H
#define BIFIB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BifibMethod {
  BIFIB_METHOD_DIRECT = 0,
  BIFIB_METHOD_CLOSED_FORM = 1,
  BIFIB_METHOD_CONVOLUTION = 2,
  BIFIB_METHOD_ALT_SUM = 3,
  BIFIB_METHOD_RATIONAL = 4,
  BIFIB_METHOD_RTH_RECURRENCE = 5,
} BifibMethod;

/**
 * Result of every fallible call.
 */
typedef enum BifibStatus {
  BIFIB_STATUS_OK = 0,
  BIFIB_STATUS_NULL_POINTER = 1,
  BIFIB_STATUS_INVALID_UTF8 = 2,
  BIFIB_STATUS_PARSE = 3,
  BIFIB_STATUS_OUT_OF_DOMAIN = 4,
  BIFIB_STATUS_UNSUPPORTED = 5,
  BIFIB_STATUS_INEXACT_DIVISION = 6,
  BIFIB_STATUS_EVAL_AT_POLE = 7,
  BIFIB_STATUS_UNKNOWN_IDENTITY = 8,
  BIFIB_STATUS_EMPTY_RANGE = 9,
  /**
   * Any other library error.
   */
  BIFIB_STATUS_FAILED = 10,
  /**
   * A panic was caught; the library state is still usable.
   */
  BIFIB_STATUS_INTERNAL = 11,
} BifibStatus;

typedef enum BifibWrt {
  BIFIB_WRT_X = 0,
  BIFIB_WRT_Y = 1,
} BifibWrt;

/**
 * Opaque polynomial handle.
 */
typedef struct BifibPoly BifibPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into the library from the same thread.
 */
const char *bifib_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void bifib_string_free(char *s);

/**
 * Releases a polynomial handle. Null is ignored.
 */
void bifib_poly_free(struct BifibPoly *p);

/**
 * `F_n`; any integer index.
 */
enum BifibStatus bifib_fib(int64_t n, struct BifibPoly **out);

/**
 * `L_n`; any integer index.
 */
enum BifibStatus bifib_lucas(int64_t n, struct BifibPoly **out);

/**
 * `d^r F_n / d(wrt)^r` by the chosen construction.
 */
enum BifibStatus bifib_derivative(int64_t n,
                                  uint32_t r,
                                  enum BifibWrt wrt,
                                  enum BifibMethod method,
                                  struct BifibPoly **out);

/**
 * Parses the canonical JSON form `{"terms":[{"ex":..,"ey":..,"c":".."}]}`.
 */
enum BifibStatus bifib_poly_from_json(const char *json, struct BifibPoly **out);

enum BifibStatus bifib_poly_clone(const struct BifibPoly *p, struct BifibPoly **out);

enum BifibStatus bifib_poly_add(const struct BifibPoly *a,
                                const struct BifibPoly *b,
                                struct BifibPoly **out);

enum BifibStatus bifib_poly_sub(const struct BifibPoly *a,
                                const struct BifibPoly *b,
                                struct BifibPoly **out);

enum BifibStatus bifib_poly_mul(const struct BifibPoly *a,
                                const struct BifibPoly *b,
                                struct BifibPoly **out);

/**
 * Exact division; fails with `InexactDivision` if a remainder is left.
 */
enum BifibStatus bifib_poly_div_exact(const struct BifibPoly *a,
                                      const struct BifibPoly *d,
                                      struct BifibPoly **out);

/**
 * Partial derivative of a polynomial, `order` times.
 */
enum BifibStatus bifib_poly_diff(const struct BifibPoly *p,
                                 enum BifibWrt wrt,
                                 uint32_t order,
                                 struct BifibPoly **out);

/**
 * 1 if equal, 0 if not, -1 if either handle is null.
 */
int bifib_poly_equal(const struct BifibPoly *a, const struct BifibPoly *b);

/**
 * Number of nonzero terms, or -1 for a null handle.
 */
int64_t bifib_poly_term_count(const struct BifibPoly *p);

enum BifibStatus bifib_poly_to_text(const struct BifibPoly *p, char **out);

enum BifibStatus bifib_poly_to_latex(const struct BifibPoly *p, char **out);

enum BifibStatus bifib_poly_to_json(const struct BifibPoly *p, char **out);

/**
 * Evaluates at rationals given as `"p"` or `"p/q"`; the result is written
 * in the same form.
 */
enum BifibStatus bifib_poly_eval(const struct BifibPoly *p,
                                 const char *x,
                                 const char *y,
                                 char **out);

/**
 * Runs the verifier and writes its JSON report. `id` may be `"all"`, in
 * which case the output is an array. `r_range` may be null.
 */
enum BifibStatus bifib_verify(const char *id,
                              const char *n_range,
                              const char *r_range,
                              bool all_counterexamples,
                              char **out);

/**
 * Errata report as JSON.
 */
enum BifibStatus bifib_errata(char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIFIB_H */
