#ifndef TORICMIRROR_H
#define TORICMIRROR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_UTF8 = 2,
  TM_STATUS_PARSE = 3,
  TM_STATUS_VALIDATION = 4,
  TM_STATUS_NOT_SEMI_FANO = 5,
  TM_STATUS_INVALID_ARGUMENT = 6,
  TM_STATUS_OUT_OF_ORDER = 7,
  TM_STATUS_PANIC = 99,
} TmStatus;

/**
 * A validated fan with its intersection data.
 */
typedef struct TmContext TmContext;

/**
 * Series computations on a semi-Fano context up to a fixed order.
 */
typedef struct TmEngine TmEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tm_version(void);

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next library call on this thread.
 */
const char *tm_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void tm_string_free(char *s);

/**
 * Parses and validates a fan document. `basis_cone < 0` picks the default.
 *
 * # Safety
 * `fan_json` must be a NUL-terminated string; `out` must be writable.
 */
TmStatus tm_context_new(const char *fan_json, int64_t basis_cone, TmContext **out);

/**
 * # Safety
 * `ctx` must be null or a live context handle.
 */
void tm_context_free(TmContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context handle; `out` must be writable.
 */
TmStatus tm_context_num_rays(const TmContext *ctx, size_t *out);

/**
 * Rank of H_2, the number of Novikov variables.
 *
 * # Safety
 * `ctx` must be a live context handle; `out` must be writable.
 */
TmStatus tm_context_num_vars(const TmContext *ctx, size_t *out);

/**
 * # Safety
 * `ctx` must be a live context handle; `out` must be writable.
 */
TmStatus tm_context_is_semi_fano(const TmContext *ctx, bool *out);

/**
 * Intersection matrix `P[l][k] = D_l·Psi_k` and `c1`, as JSON.
 *
 * # Safety
 * `ctx` must be a live context handle; `out` must be writable.
 */
TmStatus tm_context_psi_json(const TmContext *ctx, char **out);

/**
 * Builds an engine truncated at `order` (`"8"` or `"7/2"`). The context
 * stays owned by the caller and may be freed independently.
 *
 * # Safety
 * `ctx` must be a live context handle, `order` a NUL-terminated string and
 * `out` writable.
 */
TmStatus tm_engine_new(const TmContext *ctx, const char *order, TmEngine **out);

/**
 * # Safety
 * `engine` must be null or a live engine handle.
 */
void tm_engine_free(TmEngine *engine);

/**
 * `g_ray` in the mirror variables, as a series record.
 *
 * # Safety
 * `engine` must be a live engine handle; `out` must be writable.
 */
TmStatus tm_engine_g_json(const TmEngine *engine, size_t ray, char **out);

/**
 * `delta_ray` in the Kähler variables, as a series record.
 *
 * # Safety
 * `engine` must be a live engine handle; `out` must be writable.
 */
TmStatus tm_engine_delta_json(const TmEngine *engine, size_t ray, char **out);

/**
 * Unit factors of the mirror map (`inverse == false`) or of its inverse,
 * as a JSON array of series records.
 *
 * # Safety
 * `engine` must be a live engine handle; `out` must be writable.
 */
TmStatus tm_engine_mirror_map_json(const TmEngine *engine, bool inverse, char **out);

/**
 * The disc potential (`tilde == false`) or the transformed Hori–Vafa
 * potential, as a JSON array of terms.
 *
 * # Safety
 * `engine` must be a live engine handle; `out` must be writable.
 */
TmStatus tm_engine_potential_json(const TmEngine *engine, bool tilde, char **out);

/**
 * `n_1(beta_ray + alpha)` with `alpha` in the reporting coordinates, as a
 * decimal string `p` or `p/q`.
 *
 * # Safety
 * `engine` must be a live engine handle, `alpha` must point to `len`
 * readable values (or be null when `len == 0`), and `out` writable.
 */
TmStatus tm_engine_open_gw(const TmEngine *engine,
                           size_t ray,
                           const int32_t *alpha,
                           size_t len,
                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORICMIRROR_H */
