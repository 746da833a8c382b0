//! Stable evaluation of the trigonometric ratios that appear throughout the
//! geodesic formulas. Each has a removable singularity at x = 0 where the
//! direct form cancels catastrophically; below |x| = 0.1 we switch to series
//! carried through x^7, which keeps both branches accurate to ~1e-15.

const SERIES_CUTOFF: f64 = 0.1;

/// (sin x - x)/(1 - cos x). Odd; -> 0 as x -> 0; poles at x = 2πk, k ≠ 0.
pub(crate) fn sin_minus_x_over_one_minus_cos(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        -x * (1.0 / 3.0 + x2 * (1.0 / 90.0 + x2 * (1.0 / 2520.0 + x2 / 75600.0)))
    } else {
        let s = (0.5 * x).sin();
        (x.sin() - x) / (2.0 * s * s)
    }
}

/// d/dx of `sin_minus_x_over_one_minus_cos`. Even; -> -1/3 as x -> 0.
pub(crate) fn d_sin_minus_x_over_one_minus_cos(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        -(1.0 / 3.0 + x2 * (1.0 / 30.0 + x2 * (1.0 / 504.0 + x2 / 10800.0)))
    } else {
        let s2 = {
            let s = (0.5 * x).sin();
            s * s
        };
        (x * x.sin() - 4.0 * s2) / (4.0 * s2 * s2)
    }
}

/// (x/2)·cot(x/2). Even; -> 1 as x -> 0; poles at x = 2πk, k ≠ 0.
pub(crate) fn half_x_cot_half_x(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 * (1.0 / 12.0 + x2 * (1.0 / 720.0 + x2 / 30240.0))
    } else {
        let h = 0.5 * x;
        h * h.cos() / h.sin()
    }
}

/// sin(x)/x. Even; -> 1 as x -> 0. No cancellation, but guard the exact zero.
pub(crate) fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// (1 - cos x)/x. Odd; -> 0 as x -> 0.
pub(crate) fn one_minus_cos_over_x(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        x * (0.5 - x2 * (1.0 / 24.0 - x2 * (1.0 / 720.0 - x2 / 40320.0)))
    } else {
        let s = (0.5 * x).sin();
        2.0 * s * s / x
    }
}

/// (x - sin x)/x². Odd; -> 0 as x -> 0.
pub(crate) fn x_minus_sin_over_x_sq(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        x * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362_880.0)))
    } else {
        (x - x.sin()) / (x * x)
    }
}

/// x²/(2(1 - cos x)) = ((x/2)/sin(x/2))². Even; -> 1 as x -> 0; poles at 2πk, k ≠ 0.
pub(crate) fn x_sq_over_two_one_minus_cos(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let r = 0.5 * x / (0.5 * x).sin();
    r * r
}
