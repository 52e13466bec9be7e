#ifndef CYCLOMAT_H
#define CYCLOMAT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CyclomatStatus {
  CYCLOMAT_STATUS_OK = 0,
  CYCLOMAT_STATUS_NULL_POINTER = 1,
  CYCLOMAT_STATUS_INVALID_UTF8 = 2,
  CYCLOMAT_STATUS_PARSE = 3,
  CYCLOMAT_STATUS_ARGUMENT = 4,
  CYCLOMAT_STATUS_NOT_SYMMETRIZABLE = 5,
  CYCLOMAT_STATUS_CAP_EXCEEDED = 6,
  CYCLOMAT_STATUS_BUFFER_TOO_SMALL = 7,
  CYCLOMAT_STATUS_OVERFLOW = 8,
  CYCLOMAT_STATUS_PANIC = 9,
} CyclomatStatus;

/**
 * Opaque matrix handle.
 */
typedef struct CyclomatDigraph CyclomatDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cyclomat_last_error_message(void);

/**
 * Parses the line-oriented digraph text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CyclomatStatus cyclomat_digraph_parse(const char *text, struct CyclomatDigraph **out);

/**
 * Builds an `n x n` matrix from `n*n` row-major entries.
 *
 * # Safety
 * `entries` must point to `n*n` readable values and `out` must be writable.
 */
enum CyclomatStatus cyclomat_digraph_new(size_t n,
                                         const int64_t *entries,
                                         struct CyclomatDigraph **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void cyclomat_digraph_free(struct CyclomatDigraph *g);

/**
 * Number of vertices, or 0 for a NULL handle.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t cyclomat_digraph_order(const struct CyclomatDigraph *g);

/**
 * Reads entry `(i, j)`, 0-indexed.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CyclomatStatus cyclomat_digraph_entry(const struct CyclomatDigraph *g,
                                           size_t i,
                                           size_t j,
                                           int64_t *out);

/**
 * Renders the handle in the text format. Free the result with
 * `cyclomat_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CyclomatStatus cyclomat_digraph_to_string(const struct CyclomatDigraph *g, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void cyclomat_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CyclomatStatus cyclomat_is_symmetrizable(const struct CyclomatDigraph *g, bool *out);

/**
 * True when the matrix is symmetrizable with every eigenvalue in `[-2, 2]`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum CyclomatStatus cyclomat_is_cyclotomic(const struct CyclomatDigraph *g, bool *out);

/**
 * Writes the characteristic polynomial's coefficients, constant term first,
 * into `coeffs[0..capacity]` and the count (`order + 1`) into `len`. If
 * `capacity` is too small, only `len` is written.
 *
 * # Safety
 * `coeffs` must have room for `capacity` values; `g` and `len` must be valid.
 */
enum CyclomatStatus cyclomat_char_poly(const struct CyclomatDigraph *g,
                                       int64_t *coeffs,
                                       size_t capacity,
                                       size_t *len);

/**
 * Equivalence under signed permutations and overall negation.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum CyclomatStatus cyclomat_are_equivalent(const struct CyclomatDigraph *a,
                                            const struct CyclomatDigraph *b,
                                            bool *out);

/**
 * Builds a named family member such as `"L6+"`, `"O4'"` or `"C~3^T"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum CyclomatStatus cyclomat_family(const char *name, struct CyclomatDigraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLOMAT_H */
