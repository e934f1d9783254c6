//! Finite point-cloud approximations of Julia sets.
//!
//! Quadratic Julia sets are sampled by full binary pullback of the repelling
//! fixed point `β(c)` along both inverse branches `±√(z−c)`; real logistic
//! Cantor sets by pullback of `1 − 1/μ` under the two real inverse branches.
//! Seeding at a fixed point keeps every sample exactly in the Julia set and
//! makes the pullback levels nested, so clouds are deterministic and
//! reproducible.

use crate::families::Parameter;
use crate::grid;
use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

/// Default cap on generated points before deduplication.
pub const DEFAULT_POINT_BUDGET: usize = 1 << 20;

/// Merge tolerance for deduplication and the sort used for determinism.
const DEDUP_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum JuliaError {
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("requested depth needs {needed} points, exceeding the budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
}

#[derive(Debug, Clone)]
pub struct CloudMeta {
    pub parameter: Parameter,
    pub depth: usize,
}

/// A deduplicated, lexicographically sorted set of complex points together
/// with a covering-radius estimate (how far a point of the underlying set
/// can be from the cloud). The estimate is twice the largest
/// nearest-neighbor gap; it is an estimate, not a certified bound.
#[derive(Debug, Clone)]
pub struct PointCloud {
    points: Vec<Complex64>,
    covering_radius: f64,
    meta: CloudMeta,
}

impl PointCloud {
    /// Sorts, deduplicates to within 1e-12, and estimates the covering radius.
    pub fn from_points(mut points: Vec<Complex64>, meta: CloudMeta) -> Self {
        for p in &mut points {
            // canonicalize signed zeros so exports are byte-stable
            if p.re == 0.0 {
                p.re = 0.0;
            }
            if p.im == 0.0 {
                p.im = 0.0;
            }
        }
        points.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        let mut kept: Vec<Complex64> = Vec::with_capacity(points.len());
        for p in points {
            let dup = kept
                .iter()
                .rev()
                .take_while(|q| p.re - q.re <= DEDUP_EPS)
                .any(|q| (p - q).norm() <= DEDUP_EPS);
            if !dup {
                kept.push(p);
            }
        }
        let covering_radius = 2.0 * grid::max_nn_gap(&kept);
        Self { points: kept, covering_radius, meta }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn covering_radius(&self) -> f64 {
        self.covering_radius
    }

    pub fn meta(&self) -> &CloudMeta {
        &self.meta
    }

    /// CSV export: header `re,im`, one point per line, 15 significant digits.
    pub fn csv_string(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * 48 + 8);
        out.push_str("re,im\n");
        for p in &self.points {
            out.push_str(&format!("{:.14e},{:.14e}\n", p.re, p.im));
        }
        out
    }

    /// JSON export as plain arrays (no binary payloads).
    pub fn json_value(&self) -> Value {
        let pts: Vec<Value> = self.points.iter().map(|p| json!([p.re, p.im])).collect();
        json!({
            "family": match self.meta.parameter.family {
                crate::families::Family::Quadratic => "quadratic",
                crate::families::Family::Logistic => "logistic",
            },
            "parameter": [self.meta.parameter.value.re, self.meta.parameter.value.im],
            "depth": self.meta.depth,
            "covering_radius": self.covering_radius,
            "points": pts,
        })
    }
}

/// `M(c) = (1+√(1+4|c|))/2`; any orbit exceeding this modulus escapes.
pub fn escape_radius(c: Complex64) -> f64 {
    (1.0 + (1.0 + 4.0 * c.norm()).sqrt()) / 2.0
}

/// For real `0 ≤ c < 1/4` the Julia set lies in the closed annulus
/// `inner ≤ |z| ≤ outer` with `inner = (1+√(1−4c))/2`, `outer = (1+√(1+4c))/2`.
pub fn annulus_bounds(c: f64) -> Result<(f64, f64), JuliaError> {
    if !(0.0..0.25).contains(&c) {
        return Err(JuliaError::OutOfRange("annulus bounds need real c in [0, 1/4)"));
    }
    Ok(((1.0 + (1.0 - 4.0 * c).sqrt()) / 2.0, (1.0 + (1.0 + 4.0 * c).sqrt()) / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// The orbit first exceeded the escape radius at this iterate (1-based).
    Escaped(usize),
    Bounded,
}

/// Escape-time test against [`escape_radius`]. Iterates are tested after
/// each application of the map, so the starting point itself is not tested.
pub fn membership_escape(c: Complex64, z: Complex64, max_iter: usize) -> Membership {
    let radius = escape_radius(c);
    let mut z = z;
    for k in 1..=max_iter {
        z = z * z + c;
        if !z.is_finite() || z.norm() > radius {
            return Membership::Escaped(k);
        }
    }
    Membership::Bounded
}

fn check_budget(total: usize, budget: usize) -> Result<(), JuliaError> {
    if total > budget {
        return Err(JuliaError::BudgetExceeded { needed: total, budget });
    }
    Ok(())
}

/// Union of the preimage levels `q_c^{-k}(β)`, `1 ≤ k ≤ depth`, pulled back
/// along both branches `±√(z−c)`. Since `β` is fixed, the levels are nested
/// and the deduplicated cloud has about `2^depth` points.
pub fn sample_inverse_iteration(c: Complex64, depth: usize) -> Result<PointCloud, JuliaError> {
    sample_inverse_iteration_with_budget(c, depth, DEFAULT_POINT_BUDGET)
}

pub fn sample_inverse_iteration_with_budget(
    c: Complex64,
    depth: usize,
    budget: usize,
) -> Result<PointCloud, JuliaError> {
    if depth == 0 || depth >= 62 {
        return Err(JuliaError::OutOfRange("depth must be in 1..62"));
    }
    check_budget((1usize << (depth + 1)) - 2, budget)?;
    let beta = (Complex64::new(1.0, 0.0) + (Complex64::new(1.0, 0.0) - 4.0 * c).sqrt()) / 2.0;
    let mut level = vec![beta];
    let mut all: Vec<Complex64> = Vec::with_capacity((1 << (depth + 1)) - 2);
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for &w in &level {
            let r = (w - c).sqrt();
            next.push(r);
            next.push(-r);
        }
        all.extend_from_slice(&next);
        level = next;
    }
    Ok(PointCloud::from_points(
        all,
        CloudMeta { parameter: Parameter::quadratic(c), depth },
    ))
}

/// Real Cantor sample of the logistic Julia set for `μ ≥ 4`: depth-fold
/// pullback of the fixed point `1 − 1/μ` under the two real inverse branches
/// `g±(x) = (1 ± √(1−4x/μ))/2`. Returns `2^depth` points in `(0,1)`.
pub fn cantor_sample_real(mu: f64, depth: usize) -> Result<PointCloud, JuliaError> {
    cantor_sample_real_with_budget(mu, depth, DEFAULT_POINT_BUDGET)
}

pub fn cantor_sample_real_with_budget(
    mu: f64,
    depth: usize,
    budget: usize,
) -> Result<PointCloud, JuliaError> {
    if !(mu >= 4.0) || !mu.is_finite() {
        return Err(JuliaError::OutOfRange("cantor sample needs real mu >= 4"));
    }
    if depth == 0 || depth >= 62 {
        return Err(JuliaError::OutOfRange("depth must be in 1..62"));
    }
    check_budget(1usize << depth, budget)?;
    let mut level = vec![1.0 - 1.0 / mu];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for &x in &level {
            let s = (1.0 - 4.0 * x / mu).sqrt();
            // left branch in conjugate form: exact as x → 0
            next.push(2.0 * x / (mu * (1.0 + s)));
            next.push((1.0 + s) / 2.0);
        }
        level = next;
    }
    let points = level.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    Ok(PointCloud::from_points(
        points,
        CloudMeta { parameter: Parameter::logistic(Complex64::new(mu, 0.0)), depth },
    ))
}
