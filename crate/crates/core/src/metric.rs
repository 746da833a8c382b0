//! Right-invariant metric data and the closed-form geodesic machinery: the
//! invariant bilinear form η(a, b, d), the invariant frame matrices, the
//! Euler–Arnold solution for the frame momenta, the reconstructed geodesics,
//! and the criterion for an exponential curve to be geodesic.

#![allow(clippy::needless_range_loop)] // index loops mirror the tensor formulas
use crate::group::{AlgebraElement, GroupElement};
use crate::trig;
use thiserror::Error;

pub type Mat4 = [[f64; 4]; 4];

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum MetricError {
    #[error(
        "metric not positive definite: need a > 0 and a·d − b² > 0 (a = {a}, b = {b}, d = {d})"
    )]
    NotPositiveDefinite { a: f64, b: f64, d: f64 },
}

/// Parameters (a, b, d) of the invariant bilinear form
///
/// ```text
///        ⎛ a 0 0 b ⎞
///  η  =  ⎜ 0 1 0 0 ⎟      in coordinate order (e, q, p, α),
///        ⎜ 0 0 1 0 ⎟
///        ⎝ b 0 0 d ⎠
/// ```
///
/// positive definite iff a > 0 and a·d − b² > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric {
    a: f64,
    b: f64,
    d: f64,
}

impl Metric {
    pub fn new(a: f64, b: f64, d: f64) -> Result<Self, MetricError> {
        if a > 0.0 && a * d - b * b > 0.0 {
            Ok(Self { a, b, d })
        } else {
            Err(MetricError::NotPositiveDefinite { a, b, d })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// a·d − b², the determinant of the (e, α) block.
    pub fn det_block(&self) -> f64 {
        self.a * self.d - self.b * self.b
    }

    /// Smallest eigenvalue of the (e, α) block; a crude but rigorous
    /// lower-bound constant for pruning (the q, p block contributes 1).
    pub fn lambda_min(&self) -> f64 {
        let tr = self.a + self.d;
        let disc = ((self.a - self.d) * (self.a - self.d) + 4.0 * self.b * self.b).sqrt();
        (0.5 * (tr - disc)).min(1.0)
    }

    pub fn eta(&self) -> Mat4 {
        [
            [self.a, 0.0, 0.0, self.b],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [self.b, 0.0, 0.0, self.d],
        ]
    }

    pub fn eta_inv(&self) -> Mat4 {
        let det = self.det_block();
        [
            [self.d / det, 0.0, 0.0, -self.b / det],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [-self.b / det, 0.0, 0.0, self.a / det],
        ]
    }

    /// η(x, x) for a frame vector in (e, q, p, α) order.
    pub fn quadratic_form(&self, v: &[f64; 4]) -> f64 {
        self.a * v[0] * v[0]
            + v[1] * v[1]
            + v[2] * v[2]
            + 2.0 * self.b * v[0] * v[3]
            + self.d * v[3] * v[3]
    }
}

/// Integration constants (A, B, D, F) of the Euler–Arnold solution, stored as
/// the initial frame momenta they are: A = Π^e, B = Π^α, F = Π^q(0),
/// D = Π^p(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicParams {
    pub pi_e: f64,
    pub pi_alpha: f64,
    pub pi_q0: f64,
    pub pi_p0: f64,
}

impl GeodesicParams {
    pub fn new(a_const: f64, b_const: f64, d_const: f64, f_const: f64) -> Self {
        Self {
            pi_e: a_const,
            pi_alpha: b_const,
            pi_p0: d_const,
            pi_q0: f_const,
        }
    }

    /// Rotation rate ν = a·A + (b+1)·B of the frame momenta.
    pub fn nu(&self, m: &Metric) -> f64 {
        m.a * self.pi_e + (m.b + 1.0) * self.pi_alpha
    }

    /// Rotation rate ν̃ = a·A + (b+2)·B of the reconstructed coordinates.
    pub fn nu_tilde(&self, m: &Metric) -> f64 {
        m.a * self.pi_e + (m.b + 2.0) * self.pi_alpha
    }

    /// D² + F², the conserved squared amplitude of the rotating momenta.
    pub fn amplitude_sq(&self) -> f64 {
        self.pi_p0 * self.pi_p0 + self.pi_q0 * self.pi_q0
    }
}

/// Components of the left-invariant vector fields at g, as the matrix
/// μ_L with ȧ = μ_L(a)·x for the flow of the right translation by exp(tx).
pub fn mu_left(g: &GroupElement) -> Mat4 {
    [
        [1.0, -0.5 * g.p, 0.5 * g.q, 0.0],
        [0.0, 1.0, 0.0, -g.p],
        [0.0, 0.0, 1.0, g.q],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Components of the right-invariant vector fields at g.
pub fn mu_right(g: &GroupElement) -> Mat4 {
    let (c, s) = (g.alpha.cos(), g.alpha.sin());
    [
        [
            1.0,
            0.5 * (g.p * c - g.q * s),
            -0.5 * (g.p * s + g.q * c),
            0.0,
        ],
        [0.0, c, -s, 0.0],
        [0.0, s, c, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Inverse of `mu_right`: the coefficient matrix of the right-invariant
/// coframe, Π = λ_R(a)·ȧ.
pub fn lambda_right(g: &GroupElement) -> Mat4 {
    let (c, s) = (g.alpha.cos(), g.alpha.sin());
    [
        [1.0, -0.5 * g.p, 0.5 * g.q, 0.0],
        [0.0, c, s, 0.0],
        [0.0, -s, c, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Coordinate components g_ij = (λ_Rᵀ η λ_R)_ij of the right-invariant metric.
pub fn metric_tensor(m: &Metric, g: &GroupElement) -> Mat4 {
    let lam = lambda_right(g);
    let eta = m.eta();
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    acc += eta[k][l] * lam[k][i] * lam[l][j];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_vec(m: &Mat4, v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
    }
    out
}

/// Euler–Arnold solution for the frame momenta at time t, in (e, q, p, α)
/// order: Π^e = A, Π^α = B, Π^q = −D sin(νt) + F cos(νt),
/// Π^p = D cos(νt) + F sin(νt).
pub fn euler_arnold_pi(m: &Metric, gp: &GeodesicParams, t: f64) -> [f64; 4] {
    let nu = gp.nu(m);
    let (s, c) = (nu * t).sin_cos();
    [
        gp.pi_e,
        -gp.pi_p0 * s + gp.pi_q0 * c,
        gp.pi_p0 * c + gp.pi_q0 * s,
        gp.pi_alpha,
    ]
}

/// Point of the closed-form geodesic through the identity at parameter t.
///
/// All removable singularities (ν̃ → 0, ν̃t → 2πk) are handled by the stable
/// helpers, so this is total in (gp, t).
pub fn geodesic_point(m: &Metric, gp: &GeodesicParams, t: f64) -> GroupElement {
    let nt = gp.nu_tilde(m);
    let x = nt * t;
    let f1 = trig::sinc(x);
    let f2 = trig::one_minus_cos_over_x(x);
    let f3 = trig::x_minus_sin_over_x_sq(x);
    let (dd, ff) = (gp.pi_p0, gp.pi_q0);
    GroupElement {
        e: gp.pi_e * t - 0.5 * gp.amplitude_sq() * t * t * f3,
        alpha: gp.pi_alpha * t,
        q: t * (ff * f1 - dd * f2),
        p: t * (dd * f1 + ff * f2),
    }
}

/// Coordinate velocity of the closed-form geodesic, ȧ = μ_R(a)·Π(t), in
/// closed form.
pub fn geodesic_velocity(m: &Metric, gp: &GeodesicParams, t: f64) -> [f64; 4] {
    let nt = gp.nu_tilde(m);
    let (s, c) = (nt * t).sin_cos();
    let (dd, ff) = (gp.pi_p0, gp.pi_q0);
    [
        gp.pi_e - 0.5 * gp.amplitude_sq() * t * trig::one_minus_cos_over_x(nt * t),
        ff * c - dd * s,
        ff * s + dd * c,
        gp.pi_alpha,
    ]
}

/// Constant speed √(η(Π, Π)) = √(aA² + 2bAB + dB² + D² + F²) of the geodesic.
pub fn speed(m: &Metric, gp: &GeodesicParams) -> f64 {
    (m.a * gp.pi_e * gp.pi_e
        + 2.0 * m.b * gp.pi_e * gp.pi_alpha
        + m.d * gp.pi_alpha * gp.pi_alpha
        + gp.amplitude_sq())
    .sqrt()
}

/// Whether σ ↦ exp(σ·x) is a geodesic of the metric: true iff
/// x^q·(a·x^e + (b+1)·x^α) and x^p·(a·x^e + (b+1)·x^α) both vanish.
pub fn exp_is_geodesic(m: &Metric, x: &AlgebraElement) -> bool {
    let w = m.a * x.xe + (m.b + 1.0) * x.xalpha;
    (x.xq * w).abs() <= 1e-12 && (x.xp * w).abs() <= 1e-12
}

/// The automorphism subfamily that preserves the form of η: a q–p rotation by
/// θ together with the shear e = e' + τα'. The metric entries transform as
/// a = a', b = b' − a'τ, d = d' + a'τ² − 2b'τ (the block determinant is
/// invariant).
#[derive(Debug, Clone, Copy)]
pub struct MetricAutomorphism {
    pub theta: f64,
    pub tau: f64,
}

impl MetricAutomorphism {
    pub fn apply_to_element(&self, g: &GroupElement) -> GroupElement {
        let (c, s) = (self.theta.cos(), self.theta.sin());
        GroupElement {
            e: g.e + self.tau * g.alpha,
            alpha: g.alpha,
            q: s * g.p + c * g.q,
            p: c * g.p - s * g.q,
        }
    }

    pub fn apply_to_metric(&self, m: &Metric) -> Result<Metric, MetricError> {
        Metric::new(
            m.a,
            m.b - m.a * self.tau,
            m.d + m.a * self.tau * self.tau - 2.0 * m.b * self.tau,
        )
    }
}
