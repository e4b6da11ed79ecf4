#ifndef ODDZETA_H
#define ODDZETA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OzRepresentation {
  OZ_REPRESENTATION_THEOREM = 0,
  OZ_REPRESENTATION_COROLLARY = 1,
  OZ_REPRESENTATION_CK_EULER = 2,
  OZ_REPRESENTATION_CK_BERNOULLI = 3,
} OzRepresentation;

/**
 * Status codes. The first four match the exit codes of the `oddzeta`
 * command-line tool.
 */
typedef enum OzStatus {
  OZ_STATUS_OK = 0,
  OZ_STATUS_DOMAIN = 1,
  OZ_STATUS_NO_CONVERGENCE = 2,
  OZ_STATUS_VERIFICATION_FAILED = 3,
  OZ_STATUS_NULL_POINTER = 4,
  OZ_STATUS_INVALID_UTF8 = 5,
  OZ_STATUS_PANIC = 6,
} OzStatus;

/**
 * The polynomial 𝒫₂ₚ(t) with exact coefficients.
 */
typedef struct OzPoly OzPoly;

/**
 * One evaluated ζ(2p+1) with its reference value and diagnostics.
 */
typedef struct OzZetaResult OzZetaResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *oz_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *oz_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void oz_string_free(char *s);

/**
 * Builds 𝒫₂ₚ for p ≥ 1.
 *
 * # Safety
 * `out` must be a valid pointer to write the handle to.
 */
enum OzStatus oz_poly_new(uint32_t p, struct OzPoly **out);

/**
 * # Safety
 * `poly` must be null or a handle from [`oz_poly_new`], not yet freed.
 */
void oz_poly_free(struct OzPoly *poly);

/**
 * Number of nonzero terms, or 0 for a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
size_t oz_poly_term_count(const struct OzPoly *poly);

/**
 * Plain-text rendering.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum OzStatus oz_poly_to_text(const struct OzPoly *poly, char **out);

/**
 * LaTeX rendering.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum OzStatus oz_poly_to_latex(const struct OzPoly *poly, char **out);

/**
 * JSON list of `{t_exp, pi_exp, num, den}` records.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum OzStatus oz_poly_to_json(const struct OzPoly *poly, char **out);

/**
 * Evaluates the polynomial at `t` to `digits` significant digits and
 * returns the decimal string.
 *
 * # Safety
 * `poly` must be a live handle, `t` a NUL-terminated decimal string and
 * `out` a valid pointer.
 */
enum OzStatus oz_poly_eval(const struct OzPoly *poly, const char *t, uint32_t digits, char **out);

/**
 * Checks ∫₀¹ 𝒫₂ₚ(t)·sin(πt) dt = −1/π in exact arithmetic.
 */
enum OzStatus oz_lemma_check(uint32_t p);

/**
 * Computes ζ(2p+1) to `digits` digits (10 to 10000).
 *
 * # Safety
 * `out` must be a valid pointer to write the handle to.
 */
enum OzStatus oz_zeta_odd(uint32_t p,
                          enum OzRepresentation rep,
                          uint32_t digits,
                          struct OzZetaResult **out);

/**
 * # Safety
 * `r` must be null or a handle from [`oz_zeta_odd`], not yet freed.
 */
void oz_zeta_result_free(struct OzZetaResult *r);

/**
 * The computed value as a decimal string.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum OzStatus oz_zeta_result_value(const struct OzZetaResult *r, char **out);

/**
 * The independently computed reference value as a decimal string.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum OzStatus oz_zeta_result_reference(const struct OzZetaResult *r, char **out);

/**
 * |value − reference| in scientific notation.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum OzStatus oz_zeta_result_abs_error(const struct OzZetaResult *r, char **out);

/**
 * Integrand evaluations used, or 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
size_t oz_zeta_result_evaluations(const struct OzZetaResult *r);

/**
 * ψ(z) for 0 < z < 1 by the tan-weighted integral. `z` is a decimal or a
 * fraction such as `1/3`. Optionally writes the reference value too.
 *
 * # Safety
 * `z` must be a NUL-terminated string, `out` a valid pointer, and
 * `reference_out` null or a valid pointer.
 */
enum OzStatus oz_digamma(const char *z, uint32_t digits, char **out, char **reference_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ODDZETA_H */
