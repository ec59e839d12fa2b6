#ifndef DELPEZZO_H
#define DELPEZZO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DpStatus {
  DP_STATUS_OK = 0,
  DP_STATUS_NULL_POINTER = 1,
  DP_STATUS_INVALID_UTF8 = 2,
  DP_STATUS_DOMAIN = 3,
  DP_STATUS_NOT_PRIME = 4,
  DP_STATUS_NOT_COPRIME = 5,
  DP_STATUS_CAP_EXCEEDED = 6,
  DP_STATUS_OVERFLOW = 7,
  DP_STATUS_HYPOTHESIS = 8,
  DP_STATUS_INVALID_ACTION = 9,
  DP_STATUS_GEOMETRY = 10,
  DP_STATUS_PANIC = 11,
} DpStatus;

typedef enum DpEngine {
  DP_ENGINE_NAIVE = 0,
  DP_ENGINE_FAST = 1,
} DpEngine;

/**
 * Opaque Galois action on the lines of a del Pezzo surface.
 */
typedef struct DpAction DpAction;

/**
 * Opaque result of a point count.
 */
typedef struct DpCount DpCount;

/**
 * An exact rational `num / den` with `den > 0`.
 */
typedef struct DpRational {
  int64_t num;
  int64_t den;
} DpRational;

/**
 * A floating-point value with an error bar.
 */
typedef struct DpEstimate {
  double value;
  double error_bar;
} DpEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *dp_last_error_message(void);

/**
 * Static name of a `DpStatus` value; unknown codes give "unknown status".
 */
const char *dp_status_name(int32_t status);

/**
 * Library version as a static string.
 */
const char *dp_version(void);

/**
 * Count points of height at most `bound` on the open subset. `engine` is a
 * `DpEngine` value.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum DpStatus dp_count(int64_t bound, uint32_t engine, struct DpCount **out);

/**
 * The bound the count was made for. Returns 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle from [`dp_count`].
 */
int64_t dp_count_bound(const struct DpCount *c);

/**
 * Points on the open subset. Returns 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle from [`dp_count`].
 */
uint64_t dp_count_n_u(const struct DpCount *c);

/**
 * `N_1`, one eighth of the generic count. Returns 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle from [`dp_count`].
 */
uint64_t dp_count_n1(const struct DpCount *c);

/**
 * Points with a vanishing coordinate among `x0..x3`. Returns 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle from [`dp_count`].
 */
uint64_t dp_count_stratum_zero(const struct DpCount *c);

/**
 * Points with `x4 = 0`. Returns 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle from [`dp_count`].
 */
uint64_t dp_count_stratum_x4(const struct DpCount *c);

/**
 * # Safety
 * `c` must be null or a live handle from [`dp_count`]; it is invalid afterwards.
 */
void dp_count_free(struct DpCount *c);

/**
 * The trivial action in degree 3 or 4.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum DpStatus dp_action_trivial(uint32_t degree, struct DpAction **out);

/**
 * The whole Weyl group acting on the lines.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum DpStatus dp_action_full(uint32_t degree, struct DpAction **out);

/**
 * Complex conjugation on the quartic of interest (degree 4).
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum DpStatus dp_action_conj(struct DpAction **out);

/**
 * Generators in cycle notation over 0-based line indices, one per line.
 *
 * # Safety
 * `text` must be null or a nul-terminated string; `out` must be valid for
 * writing one pointer.
 */
enum DpStatus dp_action_parse(uint32_t degree, const char *text, struct DpAction **out);

/**
 * # Safety
 * `a` must be null or a live action handle; it is invalid afterwards.
 */
void dp_action_free(struct DpAction *a);

/**
 * Nef-cone volume for an action, plus the rank of the invariant Picard group.
 *
 * # Safety
 * `a` must be a live action handle; `out` and `rank` must be valid for writes
 * (`rank` may be null).
 */
enum DpStatus dp_alpha(const struct DpAction *a, struct DpRational *out, uint32_t *rank);

/**
 * The exact volume of the region W0.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dp_vol_w0(struct DpRational *out);

/**
 * `omega*` at `p` from a direct count modulo `p^n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dp_omega_p_direct(uint64_t p, uint32_t n, struct DpRational *out);

/**
 * The conic density `D*_{mu,nu}(p^n)` for the fiber data `(c, d)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dp_d_star(uint64_t p,
                        uint32_t n,
                        uint32_t mu,
                        uint32_t nu,
                        int64_t c,
                        int64_t d,
                        struct DpRational *out);

/**
 * `h(a, b; Y)` for the fiber `(a, b)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dp_main_term_h(int64_t a, int64_t b, struct DpRational y, struct DpRational *out);

/**
 * The Euler product `C*` over primes up to `pmax`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dp_c_star(uint64_t pmax, uint32_t nucap, struct DpEstimate *out);

/**
 * `sigma_inf` by adaptive quadrature to the given tolerance.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dp_sigma_infinity(double tolerance, struct DpEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELPEZZO_H */
