/* C interface to the mixnum inter-numerology interference library. */

#ifndef MIXNUM_H
#define MIXNUM_H

/* Generated by cbindgen from the mixnum-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a fallible call.
typedef enum MixnumStatus {
  MIXNUM_OK = 0,
  MIXNUM_NULL_POINTER = 1,
  MIXNUM_INVALID_ARGUMENT = 2,
  MIXNUM_DOMAIN_ERROR = 3,
  MIXNUM_TOLERANCE_NOT_REACHED = 4,
} MixnumStatus;

// Opaque handle to a validated numerology pair.
typedef struct MixnumPair MixnumPair;

// Flattened pair summary.
typedef struct MixnumPairInfo {
  double bandwidth_hz;
  double delta_f1_hz;
  double delta_f2_hz;
  double t1_s;
  double t2_s;
  double sampling_duration_s;
  size_t n1;
  size_t n2;
  uint32_t nu;
} MixnumPairInfo;

// One inner product: complex value, magnitude, and the relative distance
// it was evaluated at.
typedef struct MixnumInnerProduct {
  double re;
  double im;
  double magnitude;
  double d;
} MixnumInnerProduct;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a NUL-terminated static string.
const char *mixnum_version(void);

// Build a pair from the shared bandwidth and the two subcarrier spacings
// (wide first). On success writes a heap handle to `out`; release it with
// `mixnum_pair_free`.
//
// # Safety
// `out` must be a valid, writable pointer.
enum MixnumStatus mixnum_pair_new(double bandwidth_hz,
                                  double delta_f_wide_hz,
                                  double delta_f_narrow_hz,
                                  struct MixnumPair **out);

// Build a pair from the scaling factor and wide-side subcarrier count,
// anchoring the narrow spacing at 15 kHz.
//
// # Safety
// `out` must be a valid, writable pointer.
enum MixnumStatus mixnum_pair_from_dimensionless(uint32_t nu, size_t n1, struct MixnumPair **out);

// Release a handle returned by one of the constructors. A null pointer is
// a no-op.
//
// # Safety
// `pair` must be null or a pointer previously returned by a constructor
// and not yet freed.
void mixnum_pair_free(struct MixnumPair *pair);

// # Safety
// `pair` and `out` must be valid pointers.
enum MixnumStatus mixnum_pair_info(const struct MixnumPair *pair, struct MixnumPairInfo *out);

// Relative distance d = m - n/nu. Returns NaN for nu < 2.
double mixnum_relative_distance(size_t m, size_t n, uint32_t nu);

// True when wide subcarrier m and narrow subcarrier n are orthogonal:
// n is a multiple of nu and the two are not co-located.
bool mixnum_is_orthogonal(size_t m, size_t n, uint32_t nu);

// Reduced-form continuous inner product between wide subcarrier m and
// narrow subcarrier n.
//
// # Safety
// `pair` and `out` must be valid pointers.
enum MixnumStatus mixnum_rho_continuous(const struct MixnumPair *pair,
                                        size_t m,
                                        size_t n,
                                        struct MixnumInnerProduct *out);

// Reduced-form discrete inner product over the pair's N1 samples.
//
// # Safety
// `pair` and `out` must be valid pointers.
enum MixnumStatus mixnum_rho_discrete(const struct MixnumPair *pair,
                                      size_t m,
                                      size_t n,
                                      struct MixnumInnerProduct *out);

// Brute-force discrete inner product (compensated direct summation).
//
// # Safety
// `pair` and `out` must be valid pointers.
enum MixnumStatus mixnum_rho_soe(const struct MixnumPair *pair,
                                 size_t m,
                                 size_t n,
                                 struct MixnumInnerProduct *out);

// Brute-force continuous inner product by adaptive quadrature with the
// given absolute tolerance (accepted range 1e-13..=1e-6).
//
// # Safety
// `pair` and `out` must be valid pointers.
enum MixnumStatus mixnum_rho_quadrature(const struct MixnumPair *pair,
                                        size_t m,
                                        size_t n,
                                        double tol,
                                        struct MixnumInnerProduct *out);

// Discretization factor beta = 1 / |sinc(d / n1)|, defined for |d| < n1.
//
// # Safety
// `out` must be a valid, writable pointer.
enum MixnumStatus mixnum_beta(double d, size_t n1, double *out);

// Percentage by which the discrete magnitude exceeds the continuous one.
//
// # Safety
// `out` must be a valid, writable pointer.
enum MixnumStatus mixnum_discretization_error_pct(double d, size_t n1, double *out);

// Smallest power-of-two sample count whose discretization error at
// distance d does not exceed tol_pct percent.
//
// # Safety
// `out` must be a valid, writable pointer.
enum MixnumStatus mixnum_min_samples_for_tolerance(double d, double tol_pct, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXNUM_H */
