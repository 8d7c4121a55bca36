//! Desk-scale laboratory for bounded-cohomology constructions: exact
//! piecewise-linear realizations of Thompson's groups F and T, bar complexes of
//! finite groups with norms, alternating cochains on the circle, linear
//! programs for minimal primitives, and dissipator-based pseudo-mitosis
//! witnesses.

pub mod binate;
pub mod circular;
pub mod dyadic;
pub mod group;
pub mod lp;
pub mod pl;
pub mod rng;
pub mod sample;
pub mod thompson;

pub use dyadic::{CirclePoint, Dyadic};
pub use pl::{Domain, OmegaPLMap, PLMap};
