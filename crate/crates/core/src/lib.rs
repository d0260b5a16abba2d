//! Skew ruled surfaces in striction-line form.
//!
//! A skew ruled surface is written `x(u, v) = s(u) + v·e(u)` with a unit
//! director `e` of unit spherical speed and a striction curve `s` with
//! `⟨s′, e′⟩ = 0`. In this gauge the conical curvature `k`, the parameter of
//! distribution `δ` and the striction `σ` form a complete system of
//! invariants. The crate evaluates these invariants and the curvatures they
//! determine, traces the distinguished curve families, fits the power law
//! `k_N = f(u)·wⁿ` with `w = √(v² + δ²)` along each family and checks which
//! surface classes produce which laws.

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod curve;
pub mod error;
pub mod export;
pub mod expr;
pub mod families;
pub mod invariants;
pub mod jet;
pub mod spec;
pub mod spline;
pub mod surface;

pub use curve::{CurveR3, Interval, Vec3};
pub use error::{Error, Result};
pub use invariants::{
    extract_invariants, fundamental_forms, gaussian_mean, normal_curvature, principal_directions,
    CurvaturePair, Direction, FundamentalForms, PointInvariants,
};
pub use surface::{GallerySurface, InvariantTriple, StandardRuledSurface};
