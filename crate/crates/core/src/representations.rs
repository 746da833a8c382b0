//! Named unitaries in an irreducible representation of the group, the
//! representation kernel and its quotient topology, and their complexity.
//!
//! A representation is fixed by the Casimir values (Ω, h) with Ω > 0. The
//! center always contributes the kernel period 2π/Ω in e; the rotation
//! coordinate becomes periodic (period 2πl) exactly when h/Ω + 1/2 is
//! rational with reduced denominator l, which floats cannot decide — the
//! caller declares it.

use crate::group::{AlgebraElement, GroupElement};
use crate::metric::Metric;
use crate::solver::{complexity, BoundaryProblem, ComplexityResult, SolverError};
use thiserror::Error;

const TWO_PI: f64 = std::f64::consts::TAU;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum RepresentationError {
    #[error("Casimir Ω must be positive, got {omega}")]
    NonPositiveOmega { omega: f64 },
    #[error("declared rationality {k}/{l} requires l ≥ 1")]
    BadDenominator { k: i64, l: i64 },
    #[error("h/Ω + 1/2 = {value} is not {k}/{l} (mod 1) within 1e-12")]
    RationalityMismatch { value: f64, k: i64, l: i64 },
}

/// Casimir data (Ω, h) of an irreducible unitary representation, with the
/// optional declaration that h/Ω + 1/2 = k/l (mod 1).
#[derive(Debug, Clone, Copy)]
pub struct RepresentationSpec {
    omega: f64,
    h: f64,
    rationality: Option<(i64, i64)>,
}

impl RepresentationSpec {
    pub fn new(
        omega: f64,
        h: f64,
        rationality: Option<(i64, i64)>,
    ) -> Result<Self, RepresentationError> {
        if !omega.is_finite() || omega <= 0.0 {
            return Err(RepresentationError::NonPositiveOmega { omega });
        }
        if let Some((k, l)) = rationality {
            if l < 1 {
                return Err(RepresentationError::BadDenominator { k, l });
            }
            let value = h / omega + 0.5;
            let residue = (value - k as f64 / l as f64).rem_euclid(1.0);
            if residue.min(1.0 - residue) > 1e-12 {
                return Err(RepresentationError::RationalityMismatch { value, k, l });
            }
        }
        Ok(Self {
            omega,
            h,
            rationality,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn rationality(&self) -> Option<(i64, i64)> {
        self.rationality
    }
}

/// Kernel periods of the representation: e is always periodic with period
/// 2π/Ω; α is periodic with period 2πl in the rational case only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelInfo {
    pub e_period: f64,
    pub alpha_period: Option<f64>,
}

pub fn kernel(spec: &RepresentationSpec) -> KernelInfo {
    KernelInfo {
        e_period: TWO_PI / spec.omega,
        alpha_period: spec.rationality.map(|(_, l)| TWO_PI * l as f64),
    }
}

/// Unitaries with a closed-form group-element realization.
#[derive(Debug, Clone, Copy)]
pub enum NamedUnitary {
    /// exp(−itΩH): oscillator time evolution.
    OscillatorEvolution { t: f64 },
    /// exp(i(pQ + qP)): phase-space displacement.
    Displacement { q: f64, p: f64 },
    /// exp(−it(ΩH + λQ/Ω)): oscillator with a linear shift.
    ShiftedOscillator { t: f64, lambda: f64 },
    /// exp(iX) for an arbitrary algebra element.
    Generic { x: AlgebraElement },
}

/// Group element realized by the unitary in the given representation.
pub fn to_group_element(u: &NamedUnitary, spec: &RepresentationSpec) -> GroupElement {
    let omega = spec.omega;
    match *u {
        NamedUnitary::OscillatorEvolution { t } => GroupElement::new(0.0, -omega * t, 0.0, 0.0),
        NamedUnitary::Displacement { q, p } => GroupElement::new(0.0, 0.0, q, p),
        NamedUnitary::ShiftedOscillator { t, lambda } => {
            // Factorized form of exp(−it(ΩH + λQ/Ω)): the Q-coefficient lands
            // in the p slot and the P-coefficient in the q slot.
            let om_t = omega * t;
            let lo2 = lambda / (omega * omega);
            GroupElement::new(
                0.5 * lo2 * lo2 * (om_t - om_t.sin()),
                -om_t,
                lo2 * (om_t.cos() - 1.0),
                -lo2 * om_t.sin(),
            )
        }
        NamedUnitary::Generic { x } => x.exp(),
    }
}

/// Kernel translates of g worth feeding to the minimizer: every geodesic of
/// length ≤ budget reaching a translate satisfies |α| ≤ budget/√λ_min and
/// |e| ≤ budget/√λ_min + budget²/2 (the central coordinate grows at most like
/// the swept q–p area), so translates outside that box cannot win.
pub fn quotient_reduce(
    g: &GroupElement,
    kern: &KernelInfo,
    metric: &Metric,
    budget: f64,
) -> Vec<GroupElement> {
    let lam_sqrt = metric.lambda_min().sqrt();
    let alpha_cap = budget / lam_sqrt + 1e-9;
    let e_cap = budget / lam_sqrt + 0.5 * budget * budget + 1e-9;
    let mut alphas = Vec::new();
    match kern.alpha_period {
        None => alphas.push(g.alpha),
        Some(period) => {
            let m0 = (-g.alpha / period).round() as i64;
            let reach = (alpha_cap / period).ceil() as i64 + 1;
            for m in (m0 - reach)..=(m0 + reach) {
                let alpha = g.alpha + period * m as f64;
                if alpha.abs() <= alpha_cap || m == 0 {
                    alphas.push(alpha);
                }
            }
        }
    }
    let mut out = Vec::new();
    let j_reach = (e_cap / kern.e_period).ceil() as i64 + 1;
    let j0 = (-g.e / kern.e_period).round() as i64;
    for &alpha in &alphas {
        for j in (j0 - j_reach)..=(j0 + j_reach) {
            let e = g.e + kern.e_period * j as f64;
            if e.abs() <= e_cap || (j == 0 && alpha == g.alpha) {
                out.push(GroupElement::new(e, alpha, g.q, g.p));
            }
        }
    }
    out
}

/// Complexity of a unitary: the minimum of the group-element complexity over
/// the kernel translates of its realization.
#[derive(Debug, Clone)]
pub struct UnitaryComplexity {
    pub complexity: f64,
    pub representative: GroupElement,
    pub result: ComplexityResult,
}

pub fn unitary_complexity(
    u: &NamedUnitary,
    spec: &RepresentationSpec,
    metric: &Metric,
) -> Result<UnitaryComplexity, SolverError> {
    let g0 = to_group_element(u, spec);
    let base = complexity(&BoundaryProblem::new(*metric, g0))?;
    let kern = kernel(spec);
    let mut best = UnitaryComplexity {
        complexity: base.complexity,
        representative: g0,
        result: base,
    };
    for rep in quotient_reduce(&g0, &kern, metric, best.complexity) {
        if rep == g0 {
            continue;
        }
        let res = complexity(&BoundaryProblem::new(*metric, rep))?;
        if res.complexity < best.complexity {
            best = UnitaryComplexity {
                complexity: res.complexity,
                representative: rep,
                result: res,
            };
        }
    }
    Ok(best)
}

/// Spectrum of H in the representation: h_n = n + 1/2 + h/Ω, n = 0..n_max.
pub fn spectrum(spec: &RepresentationSpec, n_max: usize) -> Vec<f64> {
    (0..=n_max)
        .map(|n| n as f64 + 0.5 + spec.h / spec.omega)
        .collect()
}
