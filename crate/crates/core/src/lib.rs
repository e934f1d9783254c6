//! Numerical machinery for how Julia sets of the quadratic family
//! `z ↦ z² + c` and the logistic family `z ↦ μz(1−z)` move with their
//! parameter.
//!
//! The crate evaluates the derivative series of the parameter motion of
//! Julia points, samples Julia sets by inverse iteration, measures exact
//! Hausdorff distances between point clouds, implements the singular
//! expansion metric `|dz|/√(|z||z−1|)` and the Koenigs coordinate at the
//! repelling fixed point of the logistic map, and handles kneading/itinerary
//! sequences with exact rational arithmetic.
//!
//! Every quantitative claim has a `verify_*` entry point returning a
//! [`report::Report`] with a three-valued verdict (pass / fail /
//! inconclusive) suitable for machine consumption.

// Negated comparisons like `!(mu >= 4.0)` are deliberate: they reject NaN
// inputs, which the non-negated form would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod families;
pub mod hausdorff;
pub mod julia;
pub mod metric;
pub mod motion;
pub mod report;
pub mod symbolic;

mod grid;

pub use num_complex::Complex64;
