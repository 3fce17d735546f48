#ifndef SPMUT_H
#define SPMUT_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Domain errors map one-to-one onto the library's error names.
 */
typedef enum SpmutStatus {
  SPMUT_STATUS_OK = 0,
  SPMUT_STATUS_NULL_ARGUMENT = 1,
  SPMUT_STATUS_INVALID_UTF8 = 2,
  SPMUT_STATUS_PANIC = 3,
  SPMUT_STATUS_DUPLICATE_LABEL = 10,
  SPMUT_STATUS_UNKNOWN_LABEL = 11,
  SPMUT_STATUS_EMPTY_LABEL = 12,
  SPMUT_STATUS_INVALID_LABEL = 13,
  SPMUT_STATUS_CYCLE_DETECTED = 14,
  SPMUT_STATUS_INVALID_SIZE = 15,
  SPMUT_STATUS_TOO_LARGE = 16,
  SPMUT_STATUS_POSET_MISMATCH = 17,
  SPMUT_STATUS_NOT_UPPER_SET = 20,
  SPMUT_STATUS_NOT_DECREASING = 21,
  SPMUT_STATUS_NOT_BOUNDED = 22,
  SPMUT_STATUS_DUPLICATE_INDEX = 23,
  SPMUT_STATUS_NOT_INCREASING = 24,
  SPMUT_STATUS_NOT_T_FUNCTION = 25,
  SPMUT_STATUS_MISSING_VALUE = 26,
  SPMUT_STATUS_NOT_MUTABLE = 30,
  SPMUT_STATUS_NOT_INVERTIBLE = 31,
  SPMUT_STATUS_EMPTY_POSET = 32,
  SPMUT_STATUS_BAD_WINDOW = 40,
  SPMUT_STATUS_UNKNOWN_NODE = 41,
  SPMUT_STATUS_NOT_PRIME = 50,
  SPMUT_STATUS_INVALID_HOM = 51,
  SPMUT_STATUS_PARSE_ERROR = 60,
  SPMUT_STATUS_LENGTH_MISMATCH = 61,
} SpmutStatus;

/**
 * An increasing integer function on a poset.
 */
typedef struct SpmutHom SpmutHom;

/**
 * A finite poset of prime labels.
 */
typedef struct SpmutPoset SpmutPoset;

/**
 * A bounded increasing function on the spectrum of the integers.
 */
typedef struct SpmutZHom SpmutZHom;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *spmut_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void spmut_string_free(char *s);

/**
 * Parses the `elem` / `rel` poset text format.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum SpmutStatus spmut_poset_parse(const char *text_, struct SpmutPoset **out);

/**
 * The chain `c0 < ... < c(n-1)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpmutStatus spmut_poset_chain(int64_t n, struct SpmutPoset **out);

/**
 * The fan `g < p1, ..., pk`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpmutStatus spmut_poset_fan(int64_t k, struct SpmutPoset **out);

/**
 * # Safety
 * `p` must be null or a handle from this library not yet freed.
 */
void spmut_poset_free(struct SpmutPoset *p);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live poset handle.
 */
size_t spmut_poset_len(const struct SpmutPoset *p);

/**
 * # Safety
 * `p` must be a live poset handle; `out` must be writable.
 */
enum SpmutStatus spmut_poset_label(const struct SpmutPoset *p, size_t index, char **out);

/**
 * Whether `set` (`a,b`, `@all` or `@empty`) is upward closed.
 *
 * # Safety
 * `p` must be a live poset handle, `set` a NUL-terminated string and `out`
 * writable.
 */
enum SpmutStatus spmut_poset_is_upper(const struct SpmutPoset *p, const char *set, bool *out);

/**
 * All upper sets, one per line, in enumeration order.
 *
 * # Safety
 * `p` must be a live poset handle; `out` must be writable.
 */
enum SpmutStatus spmut_poset_upper_sets(const struct SpmutPoset *p, char **out);

/**
 * # Safety
 * `p` must be a live poset handle; `out` must be writable.
 */
enum SpmutStatus spmut_poset_height(const struct SpmutPoset *p, struct SpmutHom **out);

/**
 * Graphviz text of the mutation graph of all functions valued in `[a, b]`.
 *
 * # Safety
 * `p` must be a live poset handle; `out` must be writable.
 */
enum SpmutStatus spmut_poset_graph_dot(const struct SpmutPoset *p,
                                       int64_t a,
                                       int64_t b,
                                       bool nonempty_only,
                                       char **out);

/**
 * Function from `len` values given in element order.
 *
 * # Safety
 * `p` must be a live poset handle, `values` must point to `len` readable
 * integers (or be null when `len` is 0), and `out` must be writable.
 */
enum SpmutStatus spmut_hom_new(const struct SpmutPoset *p,
                               const int64_t *values,
                               size_t len,
                               struct SpmutHom **out);

/**
 * Parses the `val <label> <integer>` function format.
 *
 * # Safety
 * `p` must be a live poset handle, `text_` a NUL-terminated string and
 * `out` writable.
 */
enum SpmutStatus spmut_hom_parse(const struct SpmutPoset *p,
                                 const char *text_,
                                 struct SpmutHom **out);

/**
 * Function of a filtration given in the `<n>: <members>` format.
 *
 * # Safety
 * `p` must be a live poset handle, `text_` a NUL-terminated string and
 * `out` writable.
 */
enum SpmutStatus spmut_hom_from_filtration(const struct SpmutPoset *p,
                                           const char *text_,
                                           struct SpmutHom **out);

/**
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void spmut_hom_free(struct SpmutHom *h);

/**
 * Copies the values into `buf`, which must hold exactly the poset size.
 *
 * # Safety
 * `h` must be a live handle and `buf` must point to `len` writable integers.
 */
enum SpmutStatus spmut_hom_values(const struct SpmutHom *h, int64_t *buf, size_t len);

/**
 * False for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
bool spmut_hom_is_t_function(const struct SpmutHom *h);

/**
 * `(label:value, ...)` in element order.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SpmutStatus spmut_hom_to_string(const struct SpmutHom *h, char **out);

/**
 * The matching sp-filtration, one `<n>: <members>` line per stored index.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SpmutStatus spmut_hom_filtration(const struct SpmutHom *h, char **out);

/**
 * Right mutation at `set` (`a,b`, `@all` or `@empty`); fails with
 * `NotMutable` unless the set is upward closed.
 *
 * # Safety
 * `h` must be a live handle, `set` a NUL-terminated string and `out`
 * writable.
 */
enum SpmutStatus spmut_hom_mutate(const struct SpmutHom *h, const char *set, struct SpmutHom **out);

/**
 * `base: <n>` then one step per line.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SpmutStatus spmut_hom_decompose(const struct SpmutHom *h, char **out);

/**
 * Parses `0:<v0>; <value>:<set>; ...`.
 *
 * # Safety
 * `text_` must be a NUL-terminated string; `out` must be writable.
 */
enum SpmutStatus spmut_z_parse(const char *text_, struct SpmutZHom **out);

/**
 * The t-function `(n, U)` with `U` in set syntax (`2,3`, `~2,3`, `@empty`).
 *
 * # Safety
 * `u` must be a NUL-terminated string; `out` must be writable.
 */
enum SpmutStatus spmut_z_tfunction(int64_t n, const char *u, struct SpmutZHom **out);

/**
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void spmut_z_free(struct SpmutZHom *h);

/**
 * Right mutation at `w` (`@all`, `@empty`, `2,3` or `~2,3`).
 *
 * # Safety
 * `h` must be a live handle, `w` a NUL-terminated string and `out`
 * writable.
 */
enum SpmutStatus spmut_z_mutate(const struct SpmutZHom *h, const char *w, struct SpmutZHom **out);

/**
 * False for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
bool spmut_z_is_tfunction(const struct SpmutZHom *h);

/**
 * `(n, U)` for t-functions, otherwise `0:<v0>; <value>:<set>; ...`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SpmutStatus spmut_z_to_string(const struct SpmutZHom *h, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPMUT_H */
