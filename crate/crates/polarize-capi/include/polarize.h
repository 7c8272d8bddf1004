/* polarize C API: exact divisor-class pullback calculus on CM abelian surfaces. */

#ifndef POLARIZE_H
#define POLARIZE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Supported coefficient rings.
 */
typedef enum PolarizeRingKind {
  POLARIZE_RING_KIND_GAUSSIAN = 0,
  POLARIZE_RING_KIND_SIXTH_ROOT = 1,
  POLARIZE_RING_KIND_FIFTH_ROOT = 2,
} PolarizeRingKind;

/**
 * Status code returned by every API function.
 */
typedef enum PolarizeStatus {
  POLARIZE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  POLARIZE_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input failed to parse; see `polarize_last_error_message`.
   */
  POLARIZE_STATUS_PARSE_ERROR = 2,
  /**
   * A mathematical precondition was violated (zero argument, ring
   * mismatch, non-unit in an invariance set, ...).
   */
  POLARIZE_STATUS_MATH_ERROR = 3,
  /**
   * Unknown ring kind or scenario name.
   */
  POLARIZE_STATUS_INVALID_NAME = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  POLARIZE_STATUS_UTF8_ERROR = 5,
  /**
   * The requested value does not exist (e.g. no polarization scalar).
   */
  POLARIZE_STATUS_NO_VALUE = 6,
  /**
   * A numeric result did not fit the requested fixed-width type.
   */
  POLARIZE_STATUS_OVERFLOW = 7,
  /**
   * Internal panic; a bug, please report.
   */
  POLARIZE_STATUS_INTERNAL = 8,
} PolarizeStatus;

/**
 * Identity verdict against the relation lattice.
 */
typedef enum PolarizeVerdict {
  POLARIZE_VERDICT_HOLDS = 0,
  POLARIZE_VERDICT_HOLDS_UP_TO_TORSION = 1,
  POLARIZE_VERDICT_NOT_DERIVABLE = 2,
} PolarizeVerdict;

/**
 * Opaque calculus context handle (ring + unit invariances + relation
 * lattice).
 */
typedef struct PolarizeContext PolarizeContext;

/**
 * Opaque ring element handle.
 */
typedef struct PolarizeElement PolarizeElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Most recent error message for this thread, or NULL if none. The caller
 * owns the string and must release it with `polarize_string_free`.
 */
char *polarize_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a `polarize_*` function and not freed
 * before.
 */
void polarize_string_free(char *s);

/**
 * Parses a ring element (e.g. `"2+i"`, `"(1+z)*(1+z^2)"`) in the given
 * ring.
 *
 * # Safety
 * `text` must be a valid NUL-terminated C string; `out` must be a valid
 * pointer.
 */
enum PolarizeStatus polarize_element_parse(enum PolarizeRingKind kind,
                                           const char *text,
                                           struct PolarizeElement **out);

/**
 * Releases an element handle.
 *
 * # Safety
 * `elem` must come from `polarize_element_parse` and not be freed twice.
 */
void polarize_element_free(struct PolarizeElement *elem);

/**
 * Canonical rendering of an element (caller frees).
 *
 * # Safety
 * `elem` and `out` must be valid pointers.
 */
enum PolarizeStatus polarize_element_to_string(const struct PolarizeElement *elem, char **out);

/**
 * Field norm of an element, as a decimal string (exact, unbounded).
 *
 * # Safety
 * `elem` and `out` must be valid pointers.
 */
enum PolarizeStatus polarize_element_norm(const struct PolarizeElement *elem, char **out);

/**
 * Exact root-of-unity decision for a nonzero element.
 *
 * # Safety
 * `elem` and `out` must be valid pointers.
 */
enum PolarizeStatus polarize_element_is_root_of_unity(const struct PolarizeElement *elem,
                                                      bool *out);

/**
 * Whether the diagonal of `A × A` is preperiodic under `(phi1, phi2)`:
 * exactly when `phi1/phi2` is a root of unity.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PolarizeStatus polarize_diagonal_preperiodic(const struct PolarizeElement *phi1,
                                                  const struct PolarizeElement *phi2,
                                                  bool *out);

/**
 * Builds the standard calculus context of a ring: the base divisor is
 * declared invariant under every root of unity.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PolarizeStatus polarize_context_standard(enum PolarizeRingKind kind,
                                              struct PolarizeContext **out);

/**
 * Releases a context handle.
 *
 * # Safety
 * `ctx` must come from `polarize_context_standard` and not be freed twice.
 */
void polarize_context_free(struct PolarizeContext *ctx);

/**
 * Decides a divisor identity such as `"[2+i]*D ~ 5 D"` in the context.
 *
 * # Safety
 * All pointers must be valid; `identity` must be NUL-terminated.
 */
enum PolarizeStatus polarize_verify_identity(const struct PolarizeContext *ctx,
                                             const char *identity,
                                             enum PolarizeVerdict *out);

/**
 * Polarization scalar of `[alpha]` in the context: the unique `c >= 1`
 * with `[alpha]*D ~ c D` up to torsion. `NoValue` when absent.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PolarizeStatus polarize_polarization_scalar(const struct PolarizeContext *ctx,
                                                 const struct PolarizeElement *alpha,
                                                 int64_t *out);

/**
 * Refutation certificate for the hypothesis `[alpha]*D ~ a D`, `a >= 1`:
 * requires `q(alpha) + q(beta) ~ s q(1)` and `q(alpha beta) ~ t q(1)` to
 * be derivable; the hypothesis then forces `a(s - a) = t`. On success,
 * `out_s`/`out_t` receive the derived scalars, `out_refuted` is true
 * when no integer solution `a >= 1` exists, and `out_solutions` (if
 * non-NULL) receives the comma-separated solution list (empty string
 * when refuted; caller frees).
 *
 * # Safety
 * `ctx`, `alpha`, `beta` and the non-NULL out-pointers must be valid.
 */
enum PolarizeStatus polarize_refute_scalar_hypothesis(const struct PolarizeContext *ctx,
                                                      const struct PolarizeElement *alpha,
                                                      const struct PolarizeElement *beta,
                                                      int64_t *out_s,
                                                      int64_t *out_t,
                                                      bool *out_refuted,
                                                      char **out_solutions);

/**
 * Runs the point-level Jacobian suite on `y² = f(x)` and returns the
 * JSON report. `curve` is a polynomial in x, e.g. `"x^5-x"`.
 *
 * # Safety
 * `curve` must be NUL-terminated; `out_json` must be a valid pointer.
 */
enum PolarizeStatus polarize_jacobian_check_json(const char *curve,
                                                 uint64_t prime,
                                                 uint64_t seed,
                                                 char **out_json);

/**
 * Runs a built-in scenario (`"deg5"`, `"deg6"`, `"deg6-alpha"`,
 * `"zeta5"`) and returns the JSON report. `prime` 0 keeps the scenario
 * default. Reports with failed expectations still return `Ok`; inspect
 * the `success` field.
 *
 * # Safety
 * `name` must be NUL-terminated; `out_json` must be a valid pointer.
 */
enum PolarizeStatus polarize_run_scenario_json(const char *name,
                                               uint64_t prime,
                                               uint64_t seed,
                                               char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLARIZE_H */
