#ifndef SUPERTROPICAL_H
#define SUPERTROPICAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  ST_STATUS_SYNTAX = 3,
  ST_STATUS_PRECONDITION = 4,
  ST_STATUS_NOT_FINITE = 5,
  ST_STATUS_LIMIT_EXCEEDED = 6,
  ST_STATUS_DOMAIN = 7,
  ST_STATUS_PANIC = 8,
} StStatus;

/**
 * A divisor monoid A_ω.
 */
typedef struct StDivisorMonoid StDivisorMonoid;

/**
 * A parsed quotient presentation.
 */
typedef struct StPresentation StPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *st_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void st_string_free(char *s);

/**
 * Parses a presentation file and builds its quotient. A negative `bound` searches
 * for the degree window automatically.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum StStatus st_presentation_parse(const char *source, int32_t bound, struct StPresentation **out);

/**
 * # Safety
 * `p` must come from [`st_presentation_parse`] and not have been freed.
 */
void st_presentation_free(struct StPresentation *p);

/**
 * Number of tangibles of a tangibly finite presentation.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum StStatus st_presentation_tangible_count(const struct StPresentation *p, size_t *out);

/**
 * Projects a monomial and writes the element's text form (a representative or a ghost).
 *
 * # Safety
 * `p` must be a live handle, `monomial` a NUL-terminated string, `out` writable.
 * The string written to `out` must be released with [`st_string_free`].
 */
enum StStatus st_presentation_project(const struct StPresentation *p,
                                      const char *monomial,
                                      char **out);

/**
 * Product of two elements given in text form.
 *
 * # Safety
 * As for [`st_presentation_project`].
 */
enum StStatus st_presentation_mul(const struct StPresentation *p,
                                  const char *a,
                                  const char *b,
                                  char **out);

/**
 * # Safety
 * `p` must be a live handle, `a` and `b` NUL-terminated strings, `out` writable.
 */
enum StStatus st_presentation_same_fate(const struct StPresentation *p,
                                        const char *a,
                                        const char *b,
                                        bool *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum StStatus st_presentation_has_fate_distinction(const struct StPresentation *p, bool *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum StStatus st_presentation_has_uf(const struct StPresentation *p, bool *out);

/**
 * A_ω over unit-weight letters; `letters` is a space-separated list such as `"t1 t2"`.
 *
 * # Safety
 * `letters` and `omega` must be NUL-terminated strings; `out` must be writable.
 */
enum StStatus st_divisor_new(const char *letters, const char *omega, struct StDivisorMonoid **out);

/**
 * # Safety
 * `d` must come from [`st_divisor_new`] and not have been freed.
 */
void st_divisor_free(struct StDivisorMonoid *d);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum StStatus st_divisor_count(const struct StDivisorMonoid *d, size_t *out);

/**
 * The complement ω/z of a divisor z.
 *
 * # Safety
 * `d` must be a live handle, `z` a NUL-terminated string, `out` writable.
 * The string written to `out` must be released with [`st_string_free`].
 */
enum StStatus st_divisor_complement(const struct StDivisorMonoid *d, const char *z, char **out);

/**
 * Whether a tangible of A_ω is a lonely tyrant (true exactly for ω itself).
 *
 * # Safety
 * `d` must be a live handle, `z` a NUL-terminated string, `out` writable.
 */
enum StStatus st_divisor_is_lonely_tyrant(const struct StDivisorMonoid *d,
                                          const char *z,
                                          bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERTROPICAL_H */
