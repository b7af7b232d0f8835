#ifndef DPINV_H
#define DPINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Matrix module families accepted by [`dpinv_module_new`].
 */
typedef enum DpModuleKind {
  /**
   * Degree `r` part of the truncated polynomial ring `A_s`.
   */
  DP_MODULE_KIND_AS = 0,
  /**
   * Degree `r` part of `D_s`.
   */
  DP_MODULE_KIND_DS = 1,
  /**
   * The tensor power of `gl_n`; `s` is ignored.
   */
  DP_MODULE_KIND_TENSOR = 2,
} DpModuleKind;

typedef enum DpStatus {
  DP_STATUS_OK = 0,
  DP_STATUS_NULL_POINTER = 1,
  DP_STATUS_INVALID_ARGUMENT = 2,
  DP_STATUS_NOT_PRIME = 3,
  DP_STATUS_CAP_EXCEEDED = 4,
  DP_STATUS_PARSE = 5,
  DP_STATUS_UNKNOWN_CLAIM = 6,
  DP_STATUS_UNSUPPORTED = 7,
  DP_STATUS_PANIC = 8,
} DpStatus;

/**
 * An element of a polynomial or divided power algebra; opaque to C.
 */
typedef struct DpElement DpElement;

/**
 * A module with its basis; opaque to C.
 */
typedef struct DpModule DpModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string. Do not free.
 */
const char *dpinv_version(void);

/**
 * Message of the last failed call on this thread, or null. The caller
 * owns the returned string.
 */
char *dpinv_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void dpinv_string_free(char *s);

/**
 * Builds the degree-`r` piece of a matrix module for `n x n` matrices.
 * `max_basis = 0` keeps the default cap.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dpinv_module_new(enum DpModuleKind kind,
                               uint64_t p,
                               uintptr_t n,
                               uint32_t s,
                               uint32_t r,
                               uintptr_t max_basis,
                               struct DpModule **out);

/**
 * Builds the `D_s` piece of total degree `degree` in `m1` vectors and
 * `m2` covectors of dimension `n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DpStatus dpinv_module_new_vec_covec(uint64_t p,
                                         uintptr_t n,
                                         uintptr_t m1,
                                         uintptr_t m2,
                                         uint32_t s,
                                         uint32_t degree,
                                         uintptr_t max_basis,
                                         struct DpModule **out);

/**
 * # Safety
 * `m` must be null or a handle from this library, not yet freed.
 */
void dpinv_module_free(struct DpModule *m);

/**
 * Dimension of the module.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writes.
 */
enum DpStatus dpinv_module_dim(const struct DpModule *m, uintptr_t *out);

/**
 * Dimension of the `GL_n`-invariants.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writes.
 */
enum DpStatus dpinv_module_group_invariants(const struct DpModule *m, uintptr_t *out);

/**
 * Dimension of the `gl_n`-invariants.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writes.
 */
enum DpStatus dpinv_module_lie_invariants(const struct DpModule *m, uintptr_t *out);

/**
 * Evaluates a named invariant such as `"div e[2,1]"` or `"bracket[1,2]"`.
 *
 * # Safety
 * `query` must be a nul-terminated string and `out` valid for writes.
 */
enum DpStatus dpinv_element_new(const char *query, uint64_t p, uintptr_t n, struct DpElement **out);

/**
 * # Safety
 * `e` must be null or a handle from this library, not yet freed.
 */
void dpinv_element_free(struct DpElement *e);

/**
 * Canonical text of the element. Free with [`dpinv_string_free`].
 *
 * # Safety
 * `e` must be a live handle and `out` valid for writes.
 */
enum DpStatus dpinv_element_to_string(const struct DpElement *e, char **out);

/**
 * Whether a divided element lies in `D_s`. Ordinary polynomials are
 * rejected with `Unsupported`.
 *
 * # Safety
 * `e` must be a live handle and `out` valid for writes.
 */
enum DpStatus dpinv_element_in_ds(const struct DpElement *e, uint32_t s, bool *out);

/**
 * Runs one registered claim. `detail` may be null; otherwise it receives
 * a string to free with [`dpinv_string_free`].
 *
 * # Safety
 * `id` must be a nul-terminated string; `pass` valid for writes.
 */
enum DpStatus dpinv_verify_claim(const char *id, bool *pass, char **detail);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPINV_H */
