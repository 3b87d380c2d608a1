#ifndef BMW_FFI_H
#define BMW_FFI_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Verdicts across the boundary.
 */
#define BMW_SINGULAR 1

#define BMW_NONSINGULAR 0

#define BMW_UNDECIDED -1

/**
 * Result of every call.
 */
typedef enum BmwStatus {
  BMW_STATUS_OK = 0,
  BMW_STATUS_NULL_POINTER = 1,
  BMW_STATUS_INVALID_UTF8 = 2,
  BMW_STATUS_PARSE = 3,
  /**
   * A valid request the mathematics rejects, e.g. a bad cell.
   */
  BMW_STATUS_DOMAIN = 4,
  /**
   * The operation needs a concrete spec.
   */
  BMW_STATUS_NEEDS_CONCRETE = 5,
  BMW_STATUS_OUT_OF_RANGE = 6,
  BMW_STATUS_PANIC = 7,
} BmwStatus;

/**
 * The Gram matrix of one cell module, possibly with `r` substituted.
 */
typedef struct BmwGram BmwGram;

/**
 * A parsed parameter spec.
 */
typedef struct BmwSpec BmwSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *bmw_version(void);

/**
 * The message of the last failed call on this thread, or NULL. The caller
 * frees it with `bmw_string_free`.
 */
char *bmw_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void bmw_string_free(char *s);

/**
 * Parse a spec such as `"r=-q e=7 p=0"` or `"p=5 q0=2 r0=3"`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum BmwStatus bmw_spec_parse(const char *text, struct BmwSpec **out);

/**
 * # Safety
 * `spec` is NULL or a handle from `bmw_spec_parse` not yet freed.
 */
void bmw_spec_free(struct BmwSpec *spec);

/**
 * Canonical text of a spec.
 *
 * # Safety
 * `spec` is a live handle; `out` is writable.
 */
enum BmwStatus bmw_spec_to_string(const struct BmwSpec *spec, char **out);

/**
 * Classify `(r, q)` for `B_n`. `singular` receives `BMW_SINGULAR`,
 * `BMW_NONSINGULAR` or `BMW_UNDECIDED`; `clause` (may be NULL) the clause of
 * the theorem that decided it.
 *
 * # Safety
 * `spec` is a live handle; `singular` is writable; `clause` is NULL or writable.
 */
enum BmwStatus bmw_classify(uint32_t n,
                            const struct BmwSpec *spec,
                            int32_t *singular,
                            char **clause);

/**
 * The full verdict of `bmw_classify` as JSON.
 *
 * # Safety
 * `spec` is a live handle; `out` is writable.
 */
enum BmwStatus bmw_classify_json(uint32_t n, const struct BmwSpec *spec, char **out);

/**
 * Brute-force singularity over `GF(p)`; needs a concrete spec.
 *
 * # Safety
 * `spec` is a live handle; `singular` is writable.
 */
enum BmwStatus bmw_oracle(uint32_t n, const struct BmwSpec *spec, bool *singular);

/**
 * `Σ dim Δ(f,λ)^2` over the cells of `B_n`.
 *
 * # Safety
 * `out` is writable.
 */
enum BmwStatus bmw_dims_sum_of_squares(uint32_t n, uint64_t *out);

/**
 * The Gram matrix of `Δ(f, λ)` in `B_n`; `lambda` is like `"(2,1)"`.
 *
 * # Safety
 * `lambda` is a NUL-terminated string; `out` is writable.
 */
enum BmwStatus bmw_gram_new(uint32_t n, uint32_t f, const char *lambda, struct BmwGram **out);

/**
 * # Safety
 * `g` is NULL or a handle from this library not yet freed.
 */
void bmw_gram_free(struct BmwGram *g);

/**
 * A new handle with `r` replaced, `subst` like `"r=q^-1"` or `"r=-q"`.
 *
 * # Safety
 * `g` is a live handle; `subst` is a NUL-terminated string; `out` is writable.
 */
enum BmwStatus bmw_gram_substitute(const struct BmwGram *g,
                                   const char *subst,
                                   struct BmwGram **out);

/**
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum BmwStatus bmw_gram_dim(const struct BmwGram *g, size_t *out);

/**
 * Entry `(i, j)` as text.
 *
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum BmwStatus bmw_gram_entry(const struct BmwGram *g, size_t i, size_t j, char **out);

/**
 * The determinant; `normalized` selects `unit * (core)` over the raw form.
 *
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum BmwStatus bmw_gram_det(const struct BmwGram *g, bool normalized, char **out);

/**
 * Rank over `GF(p)`; needs a concrete spec.
 *
 * # Safety
 * `g` and `spec` are live handles; `out` is writable.
 */
enum BmwStatus bmw_gram_rank(const struct BmwGram *g, const struct BmwSpec *spec, size_t *out);

/**
 * The matrix in the common JSON format.
 *
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum BmwStatus bmw_gram_to_json(const struct BmwGram *g, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BMW_FFI_H */
