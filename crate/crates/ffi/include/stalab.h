#ifndef STALAB_H
#define STALAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define STA_BLADE_COUNT 16

typedef enum StaStatus {
  STA_STATUS_OK = 0,
  STA_STATUS_NULL_POINTER = 1,
  STA_STATUS_PARSE = 2,
  /**
   * The operation is undefined for this input (singular versor, non-bivector, ...).
   */
  STA_STATUS_DOMAIN = 3,
  STA_STATUS_INVALID_ARGUMENT = 4,
  STA_STATUS_BUFFER_TOO_SMALL = 5,
  STA_STATUS_UTF8 = 6,
} StaStatus;

/**
 * Opaque multivector handle.
 */
typedef struct StaMultivector StaMultivector;

/**
 * Output of [`sta_mv_decompose`]: ψ = ρ^{1/2} e^{γ⁵β/2} R.
 */
typedef struct StaFactors {
  double rho;
  double beta;
  /**
   * Even coefficients of R in the order 1, g01, g02, g03, g12, g13, g23, g0123.
   */
  double rotor[8];
} StaFactors;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length excluding the NUL.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t sta_last_error(char *buf, size_t len);

/**
 * Zero multivector. Never returns null.
 */
struct StaMultivector *sta_mv_zero(void);

/**
 * Multivector from 16 coefficients in canonical blade order; null if `coeffs` is null.
 *
 * # Safety
 * `coeffs` must be null or point to 16 readable doubles.
 */
struct StaMultivector *sta_mv_from_coeffs(const double *coeffs);

/**
 * Parses the textual form, e.g. `"1 + 0.5 g12 - 2 g0123"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum StaStatus sta_mv_parse(const char *text, struct StaMultivector **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `mv` must be null or a handle from this library not yet freed.
 */
void sta_mv_free(struct StaMultivector *mv);

/**
 * Copies the 16 coefficients into `out`.
 *
 * # Safety
 * `mv` must be a live handle; `out` must point to 16 writable doubles.
 */
enum StaStatus sta_mv_coeffs(const struct StaMultivector *mv, double *out);

/**
 * Writes the textual form into `buf`. If it does not fit, `*needed` receives
 * the required size including the NUL and `BufferTooSmall` is returned.
 *
 * # Safety
 * `mv` must be a live handle; `buf` must point to `len` writable bytes; `needed` may be null.
 */
enum StaStatus sta_mv_format(const struct StaMultivector *mv,
                             char *buf,
                             size_t len,
                             size_t *needed);

/**
 * Geometric product.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum StaStatus sta_mv_gp(const struct StaMultivector *a,
                         const struct StaMultivector *b,
                         struct StaMultivector **out);

/**
 * Outer product.
 *
 * # Safety
 * As for [`sta_mv_gp`].
 */
enum StaStatus sta_mv_wedge(const struct StaMultivector *a,
                            const struct StaMultivector *b,
                            struct StaMultivector **out);

/**
 * Sum.
 *
 * # Safety
 * As for [`sta_mv_gp`].
 */
enum StaStatus sta_mv_add(const struct StaMultivector *a,
                          const struct StaMultivector *b,
                          struct StaMultivector **out);

/**
 * Reversion.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StaStatus sta_mv_reverse(const struct StaMultivector *a, struct StaMultivector **out);

/**
 * Grade-`k` projection; `k` above 4 is an invalid argument.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StaStatus sta_mv_grade(const struct StaMultivector *a,
                            uint32_t k,
                            struct StaMultivector **out);

/**
 * Exponential of a pure bivector.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StaStatus sta_mv_exp_biform(const struct StaMultivector *a, struct StaMultivector **out);

/**
 * Inverse of a versor.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StaStatus sta_mv_versor_inverse(const struct StaMultivector *a, struct StaMultivector **out);

/**
 * Invariant factors of an even, invertible multivector.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum StaStatus sta_mv_decompose(const struct StaMultivector *a, struct StaFactors *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STALAB_H */
