#ifndef DQCALC_H
#define DQCALC_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `DQ_STATUS_OK` is zero.
 */
typedef enum DqStatus {
  DQ_STATUS_OK = 0,
  DQ_STATUS_NULL_POINTER = 1,
  DQ_STATUS_INVALID_UTF8 = 2,
  DQ_STATUS_PARSE = 3,
  DQ_STATUS_INVALID_ORDER = 4,
  DQ_STATUS_EMPTY_FACTOR_LIST = 5,
  DQ_STATUS_NOT_DIVISIBLE = 6,
  DQ_STATUS_LAMBDA_CONTAMINATED = 7,
  DQ_STATUS_ORDER_MISMATCH = 8,
  DQ_STATUS_ZERO_LAMBDA = 9,
  DQ_STATUS_SINGULARITY_IN_WINDOW = 10,
  DQ_STATUS_INVALID_TOLERANCE = 11,
  DQ_STATUS_INVALID_GRID = 12,
  DQ_STATUS_UNKNOWN_FUNCTION = 13,
  DQ_STATUS_INTERNAL = 14,
  DQ_STATUS_PANIC = 15,
} DqStatus;

/**
 * Opaque polynomial in `x` and `l` with rational coefficients.
 */
typedef struct DqPoly DqPoly;

/**
 * Outcome of a floating-point check of the two-factor rule.
 */
typedef struct DqReport {
  double max_abs_err;
  double max_rel_err;
  double cancellation_ratio;
  uint64_t trials;
  bool pass;
} DqReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `src` into a new polynomial.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DqStatus dq_poly_parse(const char *src, struct DqPoly **out);

/**
 * Releases a polynomial. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used afterwards.
 */
void dq_poly_free(struct DqPoly *p);

/**
 * Canonical text of `p`; release with [`dq_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum DqStatus dq_poly_render(const struct DqPoly *p, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void dq_string_free(char *s);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum DqStatus dq_poly_equal(const struct DqPoly *a, const struct DqPoly *b, bool *out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum DqStatus dq_poly_add(const struct DqPoly *a, const struct DqPoly *b, struct DqPoly **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum DqStatus dq_poly_mul(const struct DqPoly *a, const struct DqPoly *b, struct DqPoly **out);

/**
 * Evaluates `p` at `x`, `l` in floating point.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum DqStatus dq_poly_eval_f64(const struct DqPoly *p, double x, double l, double *out);

/**
 * `δ^r p`; `r = 0` copies `p`.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum DqStatus dq_delta_pow(const struct DqPoly *p, uint32_t r, struct DqPoly **out);

/**
 * `L^k p` with `L = I + lδ`.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum DqStatus dq_translation_pow(const struct DqPoly *p, uint32_t k, struct DqPoly **out);

/**
 * Two-factor closed form of `δ^r (f g)`; `r` must be positive.
 *
 * # Safety
 * `f`, `g` must be live handles and `out` a writable pointer.
 */
enum DqStatus dq_leibniz_apply(const struct DqPoly *f,
                               const struct DqPoly *g,
                               uint32_t r,
                               struct DqPoly **out);

/**
 * Alternating-sum form of `δ^r (f_1 ... f_n)`; `r` and `n` must be positive.
 *
 * # Safety
 * `factors` must point to `n` live handles and `out` be writable.
 */
enum DqStatus dq_multi_delta(const struct DqPoly *const *factors,
                             size_t n,
                             uint32_t r,
                             struct DqPoly **out);

/**
 * Checks the exponential generating function relation up to `order`.
 *
 * # Safety
 * `factors` must point to `n` live handles and `out` be writable.
 */
enum DqStatus dq_egf_check(const struct DqPoly *const *factors, size_t n, size_t order, bool *out);

/**
 * Floating-point check of the two-factor rule on `count` nodes starting at
 * `x0` with spacing `step`. `f` and `g` name catalog functions such as
 * `exp`, `sin`, `cos`, `poly(1,-2)` or `recip(3)`.
 *
 * # Safety
 * `f`, `g` must be NUL-terminated strings and `out` a writable pointer.
 */
enum DqStatus dq_numeric_verify_two_factor(const char *f,
                                           const char *g,
                                           uint32_t r,
                                           double lambda,
                                           double x0,
                                           double step,
                                           size_t count,
                                           double tol,
                                           struct DqReport *out);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into this library on the same thread.
 */
const char *dq_last_error(void);

const char *dq_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DQCALC_H */
