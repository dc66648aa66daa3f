#ifndef TNM_H
#define TNM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum TnmStatus {
  TNM_STATUS_OK = 0,
  TNM_STATUS_NULL_POINTER = 1,
  TNM_STATUS_INVALID_ARGUMENT = 2,
  TNM_STATUS_PARSE = 3,
  TNM_STATUS_PRECONDITION = 4,
  TNM_STATUS_RANGE = 5,
  TNM_STATUS_BUFFER_TOO_SMALL = 6,
  TNM_STATUS_IO = 7,
  TNM_STATUS_INTERNAL = 8,
} TnmStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct TnmComplex TnmComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *tnm_last_error_message(void);

/**
 * Builds a complex from `num_facets` facets stored back to back in
 * `vertices`, facet `i` having `sizes[i]` labels.
 *
 * # Safety
 * `vertices` must hold the sum of `sizes` labels and `sizes` must hold
 * `num_facets` entries.
 */
enum TnmStatus tnm_complex_from_facets(const uint32_t *vertices,
                                       const size_t *sizes,
                                       size_t num_facets,
                                       struct TnmComplex **out);

/**
 * Parses FCT text (NUL-terminated UTF-8).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string.
 */
enum TnmStatus tnm_complex_parse_fct(const char *text, struct TnmComplex **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void tnm_complex_free(struct TnmComplex *c);

/**
 * # Safety
 * `out` must be writable.
 */
enum TnmStatus tnm_kuehnel_solid(size_t d, struct TnmComplex **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TnmStatus tnm_kuehnel_torus(size_t d, struct TnmComplex **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TnmStatus tnm_random_stacked_ball(size_t d, size_t m, uint64_t seed, struct TnmComplex **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_dim(const struct TnmComplex *c, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_num_vertices(const struct TnmComplex *c, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_num_facets(const struct TnmComplex *c, size_t *out);

/**
 * Face counts `f_0, ..., f_d`.
 *
 * # Safety
 * `buf` must have room for `cap` entries; `len_out` must be writable.
 */
enum TnmStatus tnm_complex_f_vector(const struct TnmComplex *c,
                                    uint64_t *buf,
                                    size_t cap,
                                    size_t *len_out);

/**
 * Betti numbers over GF(2).
 *
 * # Safety
 * `buf` must have room for `cap` entries; `len_out` must be writable.
 */
enum TnmStatus tnm_complex_betti(const struct TnmComplex *c,
                                 uint64_t *buf,
                                 size_t cap,
                                 size_t *len_out);

/**
 * First Betti number over GF(2).
 *
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_beta1(const struct TnmComplex *c, uint64_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_boundary(const struct TnmComplex *c, struct TnmComplex **out);

/**
 * Closure by all vertex sets whose subsets of size at most three are faces.
 *
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_bar_construction(const struct TnmComplex *c, struct TnmComplex **out);

/**
 * Canonical FCT text; release it with `tnm_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_to_fct(const struct TnmComplex *c, char **out);

/**
 * # Safety
 * `s` must come from this library; null is ignored.
 */
void tnm_string_free(char *s);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_is_pseudomanifold(const struct TnmComplex *c, bool *out);

/**
 * Every pair of vertices spans an edge.
 *
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_is_neighborly(const struct TnmComplex *c, bool *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_is_stacked_ball(const struct TnmComplex *c, bool *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_is_stacked_sphere(const struct TnmComplex *c, bool *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_complex_is_orientable(const struct TnmComplex *c, bool *out);

/**
 * Sets `*out` to whether some vertex bijection carries facets onto facets.
 *
 * # Safety
 * Pointers must be valid.
 */
enum TnmStatus tnm_are_isomorphic(const struct TnmComplex *a,
                                  const struct TnmComplex *b,
                                  bool *out);

/**
 * Solutions `(d_out[i], f0_out[i])` of the tight-neighborly equation for
 * `3 <= d <= d_max`, in ascending `d`.
 *
 * # Safety
 * Both buffers must have room for `cap` entries; `len_out` must be writable.
 */
enum TnmStatus tnm_parameter_solutions(uint64_t beta1,
                                       uint64_t d_max,
                                       uint64_t *d_out,
                                       uint64_t *f0_out,
                                       size_t cap,
                                       size_t *len_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TNM_H */
