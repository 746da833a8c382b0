#ifndef OSCILLATOR_COMPLEXITY_H
#define OSCILLATOR_COMPLEXITY_H

/* Generated by cbindgen from oscillator-complexity-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define OCC_OK 0

#define OCC_ERR_INVALID_ARGUMENT 1

#define OCC_ERR_INVALID_METRIC 2

#define OCC_ERR_NOT_IN_EXP_IMAGE 3

#define OCC_ERR_SINGULAR_ROOT 4

#define OCC_ERR_NO_CONVERGENCE 5

#define OCC_ERR_WINDOW_EXHAUSTED 6

#define OCC_ERR_PANIC 8

// Opaque list of boundary-problem solution branches.
typedef struct OccCandidates OccCandidates;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Group product out = g · h; arrays are (e, alpha, q, p).
//
// # Safety
// `g`, `h` and `out` must point to 4 readable/writable doubles.
int32_t occ_compose(const double *g, const double *h, double *out);

// Group inverse out = g⁻¹.
//
// # Safety
// `g` and `out` must point to 4 readable/writable doubles.
int32_t occ_inverse(const double *g, double *out);

// Exponential map; `x` is (xe, xq, xp, xalpha), `out` is (e, alpha, q, p).
//
// # Safety
// `x` and `out` must point to 4 readable/writable doubles.
int32_t occ_exp(const double *x, double *out);

// Logarithm; fails with OCC_ERR_NOT_IN_EXP_IMAGE on the excluded set
// alpha = 2πk (k ≠ 0) with q² + p² ≠ 0.
//
// # Safety
// `g` and `out_x` must point to 4 readable/writable doubles.
int32_t occ_log(const double *g, double *out_x);

// Validate metric entries: OCC_OK iff a > 0 and a·d − b² > 0.
int32_t occ_metric_validate(double a, double b, double d);

// Point of the closed-form geodesic with constants (A, B, D, F) at time t.
//
// # Safety
// `out` must point to 4 writable doubles.
int32_t occ_geodesic_point(double a,
                           double b,
                           double d,
                           double big_a,
                           double big_b,
                           double big_d,
                           double big_f,
                           double t,
                           double *out);

// Constant geodesic speed for the constants (A, B, D, F).
//
// # Safety
// `out` must point to a writable double.
int32_t occ_speed(double a,
                  double b,
                  double d,
                  double big_a,
                  double big_b,
                  double big_d,
                  double big_f,
                  double *out);

// Whether σ ↦ exp(σ·x) is a geodesic; writes 1 or 0 through `out`.
//
// # Safety
// `x` must point to 4 readable doubles and `out` to a writable int.
int32_t occ_exp_is_geodesic(double a, double b, double d, const double *x, int32_t *out);

// f(ν̃; Δ) of the normalized boundary equation; OCC_ERR_SINGULAR_ROOT on the
// poles ν̃ = 2πk, k ≠ 0.
//
// # Safety
// `out` must point to a writable double.
int32_t occ_f_of_nu(double nu, double delta, double *out);

// Group element realized by exp(−it(ΩH + λQ/Ω)) with λ²/Ω⁴ and Ωt given.
//
// # Safety
// `out` must point to 4 writable doubles.
int32_t occ_shifted_oscillator_target(double lam2_over_omega4,
                                      double omega_t,
                                      double omega,
                                      double *out);

// Certified minimal geodesic length to `target` (e, alpha, q, p).
//
// Writes the complexity and the winning root ν̃; when `out_candidates` is
// non-null it receives an owned handle listing every enumerated branch,
// to be released with `occ_candidates_free`.
//
// # Safety
// `target` must point to 4 readable doubles; `out_complexity` and
// `out_winner_nu` must be writable; `out_candidates` must be writable or
// null.
int32_t occ_complexity(double a,
                       double b,
                       double d,
                       const double *target,
                       double *out_complexity,
                       double *out_winner_nu,
                       struct OccCandidates **out_candidates);

// Complexity of the unitary realizing `target` in the representation with
// Casimirs (Ω, h): the minimum over kernel translates. `rational_l` = 0
// declares h/Ω + 1/2 irrational (e-periodic kernel only); `rational_l` ≥ 1
// declares h/Ω + 1/2 = rational_k/rational_l (mod 1).
//
// # Safety
// `target` must point to 4 readable doubles; `out_complexity` must be
// writable; `out_representative` must be writable for 4 doubles or null.
int32_t occ_quotient_complexity(double a,
                                double b,
                                double d,
                                const double *target,
                                double omega,
                                double h,
                                int64_t rational_k,
                                int64_t rational_l,
                                double *out_complexity,
                                double *out_representative);

// Number of entries in a candidates handle.
//
// # Safety
// `handle` must be a live pointer from `occ_complexity` (or null: returns 0).
size_t occ_candidates_len(const struct OccCandidates *handle);

// Read candidate `index` from a handle.
//
// # Safety
// `handle` must be live; out-pointers must be writable or null.
int32_t occ_candidates_get(const struct OccCandidates *handle,
                           size_t index,
                           int64_t *out_branch,
                           double *out_nu_tilde,
                           double *out_length);

// Release a candidates handle. Null is a no-op.
//
// # Safety
// `handle` must be a pointer previously returned through `occ_complexity`
// and not yet freed.
void occ_candidates_free(struct OccCandidates *handle);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* OSCILLATOR_COMPLEXITY_H */
