//! C ABI for the oscillator-group complexity library.
//!
//! Conventions carried across the boundary:
//! - group elements are `double[4]` in the order (e, alpha, q, p);
//! - algebra elements are `double[4]` in the order (xe, xq, xp, xalpha),
//!   where xp multiplies Q and xq multiplies P;
//! - geodesic data are the four integration constants (A, B, D, F);
//! - every fallible call returns a status code and writes through
//!   out-pointers only on OCC_OK.
//!
//! All functions are panic-safe: a Rust panic is caught and surfaced as
//! OCC_ERR_PANIC instead of unwinding across the boundary.

use oscillator_complexity::group::LogError;
use oscillator_complexity::metric::{exp_is_geodesic, geodesic_point, speed};
use oscillator_complexity::representations::{kernel, quotient_reduce, to_group_element};
use oscillator_complexity::solver::{complexity, f_of_nu, BoundaryProblem, SolverError};
use oscillator_complexity::{
    AlgebraElement, GeodesicParams, GroupElement, Metric, NamedUnitary, RepresentationSpec,
};
use std::panic::{catch_unwind, UnwindSafe};

pub const OCC_OK: i32 = 0;
pub const OCC_ERR_INVALID_ARGUMENT: i32 = 1;
pub const OCC_ERR_INVALID_METRIC: i32 = 2;
pub const OCC_ERR_NOT_IN_EXP_IMAGE: i32 = 3;
pub const OCC_ERR_SINGULAR_ROOT: i32 = 4;
pub const OCC_ERR_NO_CONVERGENCE: i32 = 5;
pub const OCC_ERR_WINDOW_EXHAUSTED: i32 = 6;
pub const OCC_ERR_PANIC: i32 = 8;

/// Opaque list of boundary-problem solution branches.
pub struct OccCandidates {
    items: Vec<(i64, f64, f64)>, // (branch index, nu_tilde, length)
}

fn solver_error_code(e: SolverError) -> i32 {
    match e {
        SolverError::PoleAtRoot { .. } | SolverError::SingularRoot { .. } => OCC_ERR_SINGULAR_ROOT,
        SolverError::NoConvergence { .. } | SolverError::NoBranchMaximum { .. } => {
            OCC_ERR_NO_CONVERGENCE
        }
        SolverError::EmptyWindow { .. } | SolverError::DegenerateTarget => OCC_ERR_INVALID_ARGUMENT,
        SolverError::WindowExhausted { .. } => OCC_ERR_WINDOW_EXHAUSTED,
    }
}

fn guarded(body: impl FnOnce() -> i32 + UnwindSafe) -> i32 {
    catch_unwind(body).unwrap_or(OCC_ERR_PANIC)
}

unsafe fn read4(p: *const f64) -> Option<[f64; 4]> {
    if p.is_null() {
        None
    } else {
        Some([*p, *p.add(1), *p.add(2), *p.add(3)])
    }
}

unsafe fn write4(p: *mut f64, v: [f64; 4]) {
    for (i, x) in v.iter().enumerate() {
        *p.add(i) = *x;
    }
}

fn element_from(v: [f64; 4]) -> GroupElement {
    GroupElement::new(v[0], v[1], v[2], v[3])
}

fn element_to(g: &GroupElement) -> [f64; 4] {
    [g.e, g.alpha, g.q, g.p]
}

/// Group product out = g · h; arrays are (e, alpha, q, p).
///
/// # Safety
/// `g`, `h` and `out` must point to 4 readable/writable doubles.
#[no_mangle]
pub unsafe extern "C" fn occ_compose(g: *const f64, h: *const f64, out: *mut f64) -> i32 {
    let (Some(gv), Some(hv)) = (read4(g), read4(h)) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let r = element_to(&element_from(gv).compose(&element_from(hv)));
    write4(out, r);
    OCC_OK
}

/// Group inverse out = g⁻¹.
///
/// # Safety
/// `g` and `out` must point to 4 readable/writable doubles.
#[no_mangle]
pub unsafe extern "C" fn occ_inverse(g: *const f64, out: *mut f64) -> i32 {
    let Some(gv) = read4(g) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    write4(out, element_to(&element_from(gv).inverse()));
    OCC_OK
}

/// Exponential map; `x` is (xe, xq, xp, xalpha), `out` is (e, alpha, q, p).
///
/// # Safety
/// `x` and `out` must point to 4 readable/writable doubles.
#[no_mangle]
pub unsafe extern "C" fn occ_exp(x: *const f64, out: *mut f64) -> i32 {
    let Some(xv) = read4(x) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let g = AlgebraElement::new(xv[0], xv[1], xv[2], xv[3]).exp();
    write4(out, element_to(&g));
    OCC_OK
}

/// Logarithm; fails with OCC_ERR_NOT_IN_EXP_IMAGE on the excluded set
/// alpha = 2πk (k ≠ 0) with q² + p² ≠ 0.
///
/// # Safety
/// `g` and `out_x` must point to 4 readable/writable doubles.
#[no_mangle]
pub unsafe extern "C" fn occ_log(g: *const f64, out_x: *mut f64) -> i32 {
    let Some(gv) = read4(g) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out_x.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    match element_from(gv).log() {
        Ok(x) => {
            write4(out_x, [x.xe, x.xq, x.xp, x.xalpha]);
            OCC_OK
        }
        Err(LogError::NotInExponentialImage { .. }) => OCC_ERR_NOT_IN_EXP_IMAGE,
    }
}

/// Validate metric entries: OCC_OK iff a > 0 and a·d − b² > 0.
#[no_mangle]
pub extern "C" fn occ_metric_validate(a: f64, b: f64, d: f64) -> i32 {
    match Metric::new(a, b, d) {
        Ok(_) => OCC_OK,
        Err(_) => OCC_ERR_INVALID_METRIC,
    }
}

/// Point of the closed-form geodesic with constants (A, B, D, F) at time t.
///
/// # Safety
/// `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn occ_geodesic_point(
    a: f64,
    b: f64,
    d: f64,
    big_a: f64,
    big_b: f64,
    big_d: f64,
    big_f: f64,
    t: f64,
    out: *mut f64,
) -> i32 {
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let Ok(m) = Metric::new(a, b, d) else {
        return OCC_ERR_INVALID_METRIC;
    };
    let gp = GeodesicParams::new(big_a, big_b, big_d, big_f);
    guarded(|| {
        let g = geodesic_point(&m, &gp, t);
        unsafe { write4(out, element_to(&g)) };
        OCC_OK
    })
}

/// Constant geodesic speed for the constants (A, B, D, F).
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn occ_speed(
    a: f64,
    b: f64,
    d: f64,
    big_a: f64,
    big_b: f64,
    big_d: f64,
    big_f: f64,
    out: *mut f64,
) -> i32 {
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let Ok(m) = Metric::new(a, b, d) else {
        return OCC_ERR_INVALID_METRIC;
    };
    *out = speed(&m, &GeodesicParams::new(big_a, big_b, big_d, big_f));
    OCC_OK
}

/// Whether σ ↦ exp(σ·x) is a geodesic; writes 1 or 0 through `out`.
///
/// # Safety
/// `x` must point to 4 readable doubles and `out` to a writable int.
#[no_mangle]
pub unsafe extern "C" fn occ_exp_is_geodesic(
    a: f64,
    b: f64,
    d: f64,
    x: *const f64,
    out: *mut i32,
) -> i32 {
    let Some(xv) = read4(x) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let Ok(m) = Metric::new(a, b, d) else {
        return OCC_ERR_INVALID_METRIC;
    };
    *out = exp_is_geodesic(&m, &AlgebraElement::new(xv[0], xv[1], xv[2], xv[3])) as i32;
    OCC_OK
}

/// f(ν̃; Δ) of the normalized boundary equation; OCC_ERR_SINGULAR_ROOT on the
/// poles ν̃ = 2πk, k ≠ 0.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn occ_f_of_nu(nu: f64, delta: f64, out: *mut f64) -> i32 {
    if out.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    match f_of_nu(nu, delta) {
        Ok(v) => {
            *out = v;
            OCC_OK
        }
        Err(e) => solver_error_code(e),
    }
}

/// Group element realized by exp(−it(ΩH + λQ/Ω)) with λ²/Ω⁴ and Ωt given.
///
/// # Safety
/// `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn occ_shifted_oscillator_target(
    lam2_over_omega4: f64,
    omega_t: f64,
    omega: f64,
    out: *mut f64,
) -> i32 {
    if out.is_null() || !omega.is_finite() || omega <= 0.0 || lam2_over_omega4 < 0.0 {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let Ok(spec) = RepresentationSpec::new(omega, 0.0, None) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    let g = to_group_element(
        &NamedUnitary::ShiftedOscillator {
            t: omega_t / omega,
            lambda: lam2_over_omega4.sqrt() * omega * omega,
        },
        &spec,
    );
    write4(out, element_to(&g));
    OCC_OK
}

/// Certified minimal geodesic length to `target` (e, alpha, q, p).
///
/// Writes the complexity and the winning root ν̃; when `out_candidates` is
/// non-null it receives an owned handle listing every enumerated branch,
/// to be released with `occ_candidates_free`.
///
/// # Safety
/// `target` must point to 4 readable doubles; `out_complexity` and
/// `out_winner_nu` must be writable; `out_candidates` must be writable or
/// null.
#[no_mangle]
pub unsafe extern "C" fn occ_complexity(
    a: f64,
    b: f64,
    d: f64,
    target: *const f64,
    out_complexity: *mut f64,
    out_winner_nu: *mut f64,
    out_candidates: *mut *mut OccCandidates,
) -> i32 {
    let Some(tv) = read4(target) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out_complexity.is_null() || out_winner_nu.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let Ok(m) = Metric::new(a, b, d) else {
        return OCC_ERR_INVALID_METRIC;
    };
    let result = match catch_unwind(|| complexity(&BoundaryProblem::new(m, element_from(tv)))) {
        Ok(Ok(res)) => res,
        Ok(Err(e)) => return solver_error_code(e),
        Err(_) => return OCC_ERR_PANIC,
    };
    *out_complexity = result.complexity;
    *out_winner_nu = result.winner.nu_tilde;
    if !out_candidates.is_null() {
        let items = result
            .candidates
            .iter()
            .map(|c| (c.branch_index, c.nu_tilde, c.length))
            .collect();
        *out_candidates = Box::into_raw(Box::new(OccCandidates { items }));
    }
    OCC_OK
}

/// Complexity of the unitary realizing `target` in the representation with
/// Casimirs (Ω, h): the minimum over kernel translates. `rational_l` = 0
/// declares h/Ω + 1/2 irrational (e-periodic kernel only); `rational_l` ≥ 1
/// declares h/Ω + 1/2 = rational_k/rational_l (mod 1).
///
/// # Safety
/// `target` must point to 4 readable doubles; `out_complexity` must be
/// writable; `out_representative` must be writable for 4 doubles or null.
#[no_mangle]
pub unsafe extern "C" fn occ_quotient_complexity(
    a: f64,
    b: f64,
    d: f64,
    target: *const f64,
    omega: f64,
    h: f64,
    rational_k: i64,
    rational_l: i64,
    out_complexity: *mut f64,
    out_representative: *mut f64,
) -> i32 {
    let Some(tv) = read4(target) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if out_complexity.is_null() || rational_l < 0 {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let Ok(m) = Metric::new(a, b, d) else {
        return OCC_ERR_INVALID_METRIC;
    };
    let rationality = (rational_l >= 1).then_some((rational_k, rational_l));
    let Ok(spec) = RepresentationSpec::new(omega, h, rationality) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    let g0 = element_from(tv);
    let outcome = catch_unwind(|| -> Result<(f64, GroupElement), SolverError> {
        let base = complexity(&BoundaryProblem::new(m, g0))?;
        let mut best = (base.complexity, g0);
        for rep in quotient_reduce(&g0, &kernel(&spec), &m, best.0) {
            if rep == g0 {
                continue;
            }
            let res = complexity(&BoundaryProblem::new(m, rep))?;
            if res.complexity < best.0 {
                best = (res.complexity, rep);
            }
        }
        Ok(best)
    });
    match outcome {
        Ok(Ok((c, rep))) => {
            *out_complexity = c;
            if !out_representative.is_null() {
                write4(out_representative, element_to(&rep));
            }
            OCC_OK
        }
        Ok(Err(e)) => solver_error_code(e),
        Err(_) => OCC_ERR_PANIC,
    }
}

/// Number of entries in a candidates handle.
///
/// # Safety
/// `handle` must be a live pointer from `occ_complexity` (or null: returns 0).
#[no_mangle]
pub unsafe extern "C" fn occ_candidates_len(handle: *const OccCandidates) -> usize {
    if handle.is_null() {
        0
    } else {
        let items: &Vec<(i64, f64, f64)> = &(*handle).items;
        items.len()
    }
}

/// Read candidate `index` from a handle.
///
/// # Safety
/// `handle` must be live; out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn occ_candidates_get(
    handle: *const OccCandidates,
    index: usize,
    out_branch: *mut i64,
    out_nu_tilde: *mut f64,
    out_length: *mut f64,
) -> i32 {
    if handle.is_null() {
        return OCC_ERR_INVALID_ARGUMENT;
    }
    let items: &Vec<(i64, f64, f64)> = &(*handle).items;
    let Some(&(branch, nu, len)) = items.get(index) else {
        return OCC_ERR_INVALID_ARGUMENT;
    };
    if !out_branch.is_null() {
        *out_branch = branch;
    }
    if !out_nu_tilde.is_null() {
        *out_nu_tilde = nu;
    }
    if !out_length.is_null() {
        *out_length = len;
    }
    OCC_OK
}

/// Release a candidates handle. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer previously returned through `occ_complexity`
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn occ_candidates_free(handle: *mut OccCandidates) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse_round_trip() {
        let g = [0.3, -1.1, 0.7, 0.2];
        let mut inv = [0.0; 4];
        let mut out = [0.0; 4];
        unsafe {
            assert_eq!(occ_inverse(g.as_ptr(), inv.as_mut_ptr()), OCC_OK);
            assert_eq!(
                occ_compose(g.as_ptr(), inv.as_ptr(), out.as_mut_ptr()),
                OCC_OK
            );
        }
        for v in out {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn exp_log_round_trip_and_excluded_set() {
        let x = [0.4, -0.7, 0.9, 1.3];
        let mut g = [0.0; 4];
        let mut back = [0.0; 4];
        unsafe {
            assert_eq!(occ_exp(x.as_ptr(), g.as_mut_ptr()), OCC_OK);
            assert_eq!(occ_log(g.as_ptr(), back.as_mut_ptr()), OCC_OK);
        }
        for (u, v) in x.iter().zip(back) {
            assert!((u - v).abs() < 1e-10);
        }
        let excluded = [0.0, std::f64::consts::TAU, 1.0, 0.0];
        let mut sink = [0.0; 4];
        unsafe {
            assert_eq!(
                occ_log(excluded.as_ptr(), sink.as_mut_ptr()),
                OCC_ERR_NOT_IN_EXP_IMAGE
            );
        }
    }

    #[test]
    fn complexity_of_displacement_with_candidates() {
        let target = [0.0, 0.0, 3.0, 4.0];
        let mut c = 0.0;
        let mut nu = f64::NAN;
        let mut handle: *mut OccCandidates = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                occ_complexity(1.0, 0.0, 1.0, target.as_ptr(), &mut c, &mut nu, &mut handle),
                OCC_OK
            );
            assert!((c - 5.0).abs() < 1e-9);
            assert!(nu.abs() < 1e-9);
            let n = occ_candidates_len(handle);
            assert!(n >= 1);
            let mut len = 0.0;
            assert_eq!(
                occ_candidates_get(handle, 0, std::ptr::null_mut(), &mut nu, &mut len),
                OCC_OK
            );
            assert_eq!(
                occ_candidates_get(handle, n, std::ptr::null_mut(), &mut nu, &mut len),
                OCC_ERR_INVALID_ARGUMENT
            );
            occ_candidates_free(handle);
        }
    }

    #[test]
    fn invalid_metric_and_null_arguments() {
        assert_eq!(occ_metric_validate(1.0, 2.0, 1.0), OCC_ERR_INVALID_METRIC);
        assert_eq!(occ_metric_validate(1.0, -1.0, 2.0), OCC_OK);
        let mut c = 0.0;
        let mut nu = 0.0;
        unsafe {
            assert_eq!(
                occ_complexity(
                    1.0,
                    2.0,
                    1.0,
                    [0.0; 4].as_ptr(),
                    &mut c,
                    &mut nu,
                    std::ptr::null_mut()
                ),
                OCC_ERR_INVALID_METRIC
            );
            assert_eq!(
                occ_complexity(
                    1.0,
                    0.0,
                    1.0,
                    std::ptr::null(),
                    &mut c,
                    &mut nu,
                    std::ptr::null_mut()
                ),
                OCC_ERR_INVALID_ARGUMENT
            );
        }
    }

    #[test]
    fn quotient_complexity_sawtooth_point() {
        // h = 0, Ω = 1, Ωt = 5π on the b = 0 metric: C = √2·π.
        let target = [0.0, -5.0 * std::f64::consts::PI, 0.0, 0.0];
        let mut c = 0.0;
        let mut rep = [0.0; 4];
        unsafe {
            assert_eq!(
                occ_quotient_complexity(
                    1.0,
                    0.0,
                    2.0,
                    target.as_ptr(),
                    1.0,
                    0.0,
                    1,
                    2,
                    &mut c,
                    rep.as_mut_ptr()
                ),
                OCC_OK
            );
        }
        assert!((c - 2.0f64.sqrt() * std::f64::consts::PI).abs() < 1e-8);
        assert!((rep[1].abs() - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn published_case_through_ffi() {
        let mut target = [0.0; 4];
        let mut c = 0.0;
        let mut nu = 0.0;
        unsafe {
            assert_eq!(
                occ_shifted_oscillator_target(10.0, 10.0, 1.0, target.as_mut_ptr()),
                OCC_OK
            );
            assert_eq!(
                occ_complexity(
                    1.0,
                    -1.0,
                    2.0,
                    target.as_ptr(),
                    &mut c,
                    &mut nu,
                    std::ptr::null_mut()
                ),
                OCC_OK
            );
        }
        assert!((c - 26.391).abs() < 1e-3);
        assert!((nu + 4.621).abs() < 1e-3);
    }
}
