//! Nielsen geodesic complexity on the oscillator group.
//!
//! The oscillator group is the four-dimensional solvable group generated by
//! E, Q, P, H with \[Q,P\] = iE, \[Q,H\] = iP, \[P,H\] = −iQ and central E,
//! parametrized as g(e, α, q, p) = e^{ieE} e^{iαH} e^{i(pQ+qP)}. For the
//! two-parameter family of right-invariant metrics η(a, b, d) the geodesic
//! flow is integrable: geodesics from the identity are elementary functions
//! of four integration constants, and the boundary problem to a target
//! element reduces to a transcendental equation in one variable ν̃. The
//! complexity of a unitary is the minimal geodesic length to (a kernel
//! translate of) the group element it represents.
//!
//! Modules:
//! - [`group`]: exact group arithmetic, exp/log, automorphisms;
//! - [`metric`]: the invariant form, Euler-Arnold momenta, closed-form
//!   geodesics, the exponential-geodesic criterion;
//! - [`solver`]: branch-wise root enumeration of the boundary equation and
//!   the certified minimal length;
//! - [`oracle`]: independent RK4 integrators (first-order frame system and
//!   second-order Christoffel form), conserved-quantity drift monitoring,
//!   and the closed-form Hamiltonian solution;
//! - [`representations`]: named unitaries, representation kernels, and
//!   complexity on the quotient.

pub mod group;
pub mod metric;
pub mod oracle;
pub mod representations;
pub mod solver;
mod trig;

pub use group::{AlgebraElement, Automorphism, AutomorphismFamily, GroupElement};
pub use metric::{GeodesicParams, Metric};
pub use representations::{KernelInfo, NamedUnitary, RepresentationSpec};
pub use solver::{BoundaryProblem, ComplexityResult, GeodesicCandidate};
