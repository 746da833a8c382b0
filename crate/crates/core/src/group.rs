//! Oscillator-group arithmetic in the g(e, α, q, p) = e^{ieE} e^{iαH} e^{i(pQ+qP)}
//! parametrization: composition, inverses, the exponential map and its partial
//! inverse, and the two automorphism families.
//!
//! The group manifold is all of R⁴; coordinates are kept in the order
//! (e, q, p, α) throughout the crate. The exponential map covers the group
//! except the punctured hyperplanes α = 2πk, k ≠ 0, q² + p² ≠ 0.

use crate::trig;
use thiserror::Error;

/// Absolute tolerance for detecting the excluded set of the exponential map.
pub const EPS_EXCLUDED: f64 = 1e-9;

const TWO_PI: f64 = std::f64::consts::TAU;

/// Group element in the (e, α, q, p) coordinates. α is not wrapped: the
/// abstract group lives on R⁴; periodicity only enters through representation
/// kernels (see the `representations` module).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub e: f64,
    pub alpha: f64,
    pub q: f64,
    pub p: f64,
}

/// Lie-algebra element x^e E + x^p Q + x^q P + x^α H. Note the slot
/// convention inherited from the exponent i(pQ + qP): the Q-coefficient
/// lives in `xp` and the P-coefficient in `xq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    pub xe: f64,
    pub xq: f64,
    pub xp: f64,
    pub xalpha: f64,
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum LogError {
    /// The element lies (within tolerance) on a punctured hyperplane
    /// α = 2πk, k ≠ 0 with q² + p² ≠ 0, which the exponential map misses.
    #[error("element not in the image of the exponential map: alpha = {alpha} is within {tol} of 2π·{k} with q²+p² = {qp_sq}")]
    NotInExponentialImage {
        alpha: f64,
        k: i64,
        qp_sq: f64,
        tol: f64,
    },
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum AutomorphismError {
    #[error("degenerate automorphism: mu² + nu² must be nonzero")]
    Degenerate,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        e: 0.0,
        alpha: 0.0,
        q: 0.0,
        p: 0.0,
    };

    pub fn new(e: f64, alpha: f64, q: f64, p: f64) -> Self {
        Self { e, alpha, q, p }
    }

    /// Coordinates in the fixed (e, q, p, α) order.
    pub fn coords(&self) -> [f64; 4] {
        [self.e, self.q, self.p, self.alpha]
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Self {
            e: c[0],
            q: c[1],
            p: c[2],
            alpha: c[3],
        }
    }

    pub fn qp_norm_sq(&self) -> f64 {
        self.q * self.q + self.p * self.p
    }

    /// Group product self · rhs (rhs is the right factor).
    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        let (c, s) = (rhs.alpha.cos(), rhs.alpha.sin());
        let rot_q = self.q * c - self.p * s;
        let rot_p = self.p * c + self.q * s;
        GroupElement {
            e: self.e + rhs.e + 0.5 * rhs.p * rot_q - 0.5 * rhs.q * rot_p,
            alpha: self.alpha + rhs.alpha,
            q: rhs.q + rot_q,
            p: rhs.p + rot_p,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let (c, s) = (self.alpha.cos(), self.alpha.sin());
        GroupElement {
            e: -self.e,
            alpha: -self.alpha,
            q: -(self.q * c + self.p * s),
            p: -(self.p * c - self.q * s),
        }
    }

    /// Logarithm: the algebra element x with exp(x) = self, when it exists.
    ///
    /// Fails on the excluded set α ≈ 2πk (k ≠ 0) with q² + p² ≠ 0. On the
    /// line q = p = 0 the preimage with x^q = x^p = 0 is returned even at
    /// α = 2πk.
    pub fn log(&self) -> Result<AlgebraElement, LogError> {
        let a = self.alpha;
        let k = (a / TWO_PI).round() as i64;
        if k != 0 && (a - TWO_PI * k as f64).abs() < EPS_EXCLUDED {
            let qp_sq = self.qp_norm_sq();
            if qp_sq.sqrt() > EPS_EXCLUDED {
                return Err(LogError::NotInExponentialImage {
                    alpha: a,
                    k,
                    qp_sq,
                    tol: EPS_EXCLUDED,
                });
            }
            return Ok(AlgebraElement {
                xe: self.e,
                xq: 0.0,
                xp: 0.0,
                xalpha: a,
            });
        }
        let t = trig::half_x_cot_half_x(a);
        Ok(AlgebraElement {
            xe: self.e - 0.25 * self.qp_norm_sq() * trig::sin_minus_x_over_one_minus_cos(a),
            xq: 0.5 * a * self.p + self.q * t,
            xp: -0.5 * a * self.q + self.p * t,
            xalpha: a,
        })
    }
}

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement {
        xe: 0.0,
        xq: 0.0,
        xp: 0.0,
        xalpha: 0.0,
    };

    pub fn new(xe: f64, xq: f64, xp: f64, xalpha: f64) -> Self {
        Self { xe, xq, xp, xalpha }
    }

    /// Exponential map. Total: at α = 2πk (k ≠ 0) the image lands on
    /// q = p = 0 with e = x^e − (x^q² + x^p²)/(4πk).
    pub fn exp(&self) -> GroupElement {
        let a = self.xalpha;
        let f1 = trig::sinc(a);
        let f2 = trig::one_minus_cos_over_x(a);
        let f3 = trig::x_minus_sin_over_x_sq(a);
        GroupElement {
            e: self.xe - 0.5 * (self.xq * self.xq + self.xp * self.xp) * f3,
            alpha: a,
            q: self.xq * f1 - self.xp * f2,
            p: self.xq * f2 + self.xp * f1,
        }
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        AlgebraElement {
            xe: s * self.xe,
            xq: s * self.xq,
            xp: s * self.xp,
            xalpha: s * self.xalpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomorphismFamily {
    First,
    Second,
}

/// One of the two automorphism families of the algebra, parametrized by
/// (μ, ν, ρ, σ, τ) with μ² + ν² ≠ 0.
#[derive(Debug, Clone, Copy)]
pub struct Automorphism {
    pub family: AutomorphismFamily,
    pub mu: f64,
    pub nu: f64,
    pub rho: f64,
    pub sigma: f64,
    pub tau: f64,
}

impl Automorphism {
    pub fn new(
        family: AutomorphismFamily,
        mu: f64,
        nu: f64,
        rho: f64,
        sigma: f64,
        tau: f64,
    ) -> Result<Self, AutomorphismError> {
        if mu * mu + nu * nu == 0.0 {
            return Err(AutomorphismError::Degenerate);
        }
        Ok(Self {
            family,
            mu,
            nu,
            rho,
            sigma,
            tau,
        })
    }

    /// Images of the generators, as coefficient vectors (E, Q, P, H listed as
    /// an AlgebraElement with the crate's slot convention).
    fn generator_images(&self) -> (f64, AlgebraElement, AlgebraElement, AlgebraElement) {
        let (m, n, r, s, t) = (self.mu, self.nu, self.rho, self.sigma, self.tau);
        match self.family {
            AutomorphismFamily::First => (
                m * m + n * n,
                // Q' = μQ + νP + (νσ+μρ)E
                AlgebraElement::new(n * s + m * r, n, m, 0.0),
                // P' = −νQ + μP + (μσ−νρ)E
                AlgebraElement::new(m * s - n * r, m, -n, 0.0),
                // H' = H + ρQ + σP + τE
                AlgebraElement::new(t, s, r, 1.0),
            ),
            AutomorphismFamily::Second => (
                -(m * m + n * n),
                // Q' = μQ + νP − (νσ+μρ)E
                AlgebraElement::new(-(n * s + m * r), n, m, 0.0),
                // P' = νQ − μP + (μσ−νρ)E
                AlgebraElement::new(m * s - n * r, -m, n, 0.0),
                // H' = −H + ρQ + σP + τE
                AlgebraElement::new(t, s, r, -1.0),
            ),
        }
    }

    /// Linear action on algebra coefficients (the relabeling
    /// e'E' + p'Q' + q'P' + α'H' = eE + pQ + qP + αH).
    pub fn apply_to_algebra(&self, x: &AlgebraElement) -> AlgebraElement {
        let (e_img, q_img, p_img, h_img) = self.generator_images();
        AlgebraElement {
            xe: x.xe * e_img + x.xp * q_img.xe + x.xq * p_img.xe + x.xalpha * h_img.xe,
            xq: x.xp * q_img.xq + x.xq * p_img.xq + x.xalpha * h_img.xq,
            xp: x.xp * q_img.xp + x.xq * p_img.xp + x.xalpha * h_img.xp,
            xalpha: x.xalpha * h_img.xalpha,
        }
    }

    /// Action on a group element, transporting each factor of the
    /// e^{ieE} e^{iαH} e^{i(pQ+qP)} decomposition through the algebra map and
    /// recomposing. This is a group automorphism (the coordinate action is
    /// nonlinear whenever ρ, σ or τ is nonzero, because the transported
    /// H-factor mixes into the Heisenberg directions).
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let (e_img, q_img, p_img, h_img) = self.generator_images();
        let central = GroupElement::new(g.e * e_img, 0.0, 0.0, 0.0);
        let h_factor = h_img.scale(g.alpha).exp();
        // p·Q' + q·P' is in the Heisenberg subalgebra: exp is the identity on
        // coordinates.
        let qp_factor = GroupElement {
            e: g.p * q_img.xe + g.q * p_img.xe,
            alpha: 0.0,
            q: g.p * q_img.xq + g.q * p_img.xq,
            p: g.p * q_img.xp + g.q * p_img.xp,
        };
        central.compose(&h_factor).compose(&qp_factor)
    }
}
