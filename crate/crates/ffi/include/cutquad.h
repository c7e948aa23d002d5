#ifndef CUTQUAD_H
#define CUTQUAD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CqStatus {
  CQ_STATUS_OK = 0,
  CQ_STATUS_NULL_POINTER = 1,
  CQ_STATUS_INVALID_ARGUMENT = 2,
  CQ_STATUS_DEGREE_CAP = 3,
  CQ_STATUS_NUMERICAL = 4,
  CQ_STATUS_BUFFER_TOO_SMALL = 5,
  CQ_STATUS_PANIC = 6,
} CqStatus;

typedef enum CqBoundaryMode {
  CQ_BOUNDARY_MODE_HALF = 0,
  CQ_BOUNDARY_MODE_FULL = 1,
} CqBoundaryMode;

/**
 * Tetrahedron basis family; `Auto` lets the kernel choose.
 */
typedef enum CqTetVariant {
  CQ_TET_VARIANT_AUTO = 0,
  CQ_TET_VARIANT_V1 = 1,
  CQ_TET_VARIANT_V2 = 2,
  CQ_TET_VARIANT_V3 = 3,
} CqTetVariant;

typedef enum CqElement {
  CQ_ELEMENT_SEGMENT = 0,
  CQ_ELEMENT_HYPERCUBE = 1,
  CQ_ELEMENT_TRIANGLE = 2,
  CQ_ELEMENT_TETRAHEDRON = 3,
  CQ_ELEMENT_PRISM = 4,
} CqElement;

/**
 * Precomputed equivalent-polynomial system for one element and degree.
 */
typedef struct CqEquivSystem CqEquivSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; never null.
 */
const char *cq_status_message(enum CqStatus status);

/**
 * Segment `[0, 1]`, weight `x^m`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum CqStatus cq_lsi(double a,
                     double d,
                     uint32_t m,
                     int32_t s,
                     enum CqBoundaryMode boundary,
                     double *out);

/**
 * Unit hypercube of dimension `dim`; `normal` and `powers` hold `dim`
 * entries each.
 *
 * # Safety
 * `normal` and `powers` must be valid for `dim` reads, `out` for one write.
 */
enum CqStatus cq_hci(const double *normal,
                     size_t dim,
                     double d,
                     const uint32_t *powers,
                     int32_t s,
                     enum CqBoundaryMode boundary,
                     double *out);

/**
 * Reference triangle, weight `(1-x)^m y^n`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum CqStatus cq_tri(double a,
                     double b,
                     double d,
                     uint32_t m,
                     uint32_t n,
                     int32_t s,
                     enum CqBoundaryMode boundary,
                     double *out);

/**
 * Reference tetrahedron in the basis family chosen for the cut, which is
 * reported through `variant_out` when it is not null.
 *
 * # Safety
 * `out` must be valid for one write; `variant_out` null or valid.
 */
enum CqStatus cq_tti(double a,
                     double b,
                     double c,
                     double d,
                     uint32_t m,
                     uint32_t n,
                     uint32_t o,
                     int32_t s,
                     enum CqBoundaryMode boundary,
                     double *out,
                     enum CqTetVariant *variant_out);

/**
 * Reference prism, weight `(1-x)^m y^n ((1+z)/2)^o` against `dV/2`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum CqStatus cq_pri(double a,
                     double b,
                     double c,
                     double d,
                     uint32_t m,
                     uint32_t n,
                     uint32_t o,
                     int32_t s,
                     enum CqBoundaryMode boundary,
                     double *out);

/**
 * Generic entry point. `dim` is only read for `CQ_ELEMENT_HYPERCUBE`.
 *
 * # Safety
 * `normal` and `powers` must be valid for their lengths, `out` for one
 * write.
 */
enum CqStatus cq_integrate(enum CqElement kind,
                           size_t dim,
                           const double *normal,
                           size_t normal_len,
                           double d,
                           const uint32_t *powers,
                           size_t powers_len,
                           int32_t s,
                           enum CqBoundaryMode boundary,
                           double *out);

/**
 * Builds (or fetches from the shared cache) the system for polynomials of
 * total degree `<= degree`. Release with [`cq_equiv_system_free`].
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum CqStatus cq_equiv_system_new(enum CqElement kind,
                                  size_t dim,
                                  uint32_t degree,
                                  enum CqTetVariant variant,
                                  struct CqEquivSystem **out);

/**
 * Number of basis polynomials and exponents per basis entry.
 *
 * # Safety
 * `sys` must come from [`cq_equiv_system_new`]; out pointers valid.
 */
enum CqStatus cq_equiv_system_len(const struct CqEquivSystem *sys,
                                  size_t *len_out,
                                  size_t *arity_out);

/**
 * Writes the basis exponents row by row (`len * arity` values).
 *
 * # Safety
 * `sys` must come from [`cq_equiv_system_new`]; `powers_out` valid for
 * `capacity` writes.
 */
enum CqStatus cq_equiv_system_basis(const struct CqEquivSystem *sys,
                                    uint32_t *powers_out,
                                    size_t capacity);

/**
 * Coefficients of the equivalent polynomial for a cut, in basis order,
 * plus the residual `max |M c - f|` when `residual_out` is not null.
 *
 * # Safety
 * `sys` must come from [`cq_equiv_system_new`]; `normal` valid for
 * `normal_len` reads; `coefficients_out` valid for `capacity` writes.
 */
enum CqStatus cq_equiv_system_solve(const struct CqEquivSystem *sys,
                                    const double *normal,
                                    size_t normal_len,
                                    double d,
                                    int32_t s,
                                    enum CqBoundaryMode boundary,
                                    double *coefficients_out,
                                    size_t capacity,
                                    double *residual_out);

/**
 * Releases a system; null is ignored.
 *
 * # Safety
 * `sys` must be null or come from [`cq_equiv_system_new`], and must not be
 * used afterwards.
 */
void cq_equiv_system_free(struct CqEquivSystem *sys);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUTQUAD_H */
