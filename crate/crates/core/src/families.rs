//! The two one-parameter families and the affine conjugacy between them.
//!
//! `apply_q`/`apply_f` evaluate the maps, `orbit` accumulates the derivative
//! cocycle `Df^n(z₀)` by the chain rule, and `to_quadratic`/`to_logistic`
//! implement the coordinate change `w = −μz + μ/2` that conjugates the
//! logistic map at parameter `μ` to the quadratic map at `c = μ(2−μ)/4`.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    /// The logistic conjugacy and the fixed point `1 − 1/μ` need `μ ≠ 0`.
    #[error("logistic parameter must be nonzero")]
    ZeroMu,
    /// Orbit overflowed to a non-finite value; `index` is the first bad step.
    #[error("orbit value became non-finite at step {index}")]
    NonFinite { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Quadratic,
    Logistic,
}

/// A family parameter: `c` for the quadratic family, `μ` for the logistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameter {
    pub family: Family,
    pub value: Complex64,
}

impl Parameter {
    pub fn quadratic(c: Complex64) -> Self {
        Self { family: Family::Quadratic, value: c }
    }

    pub fn logistic(mu: Complex64) -> Self {
        Self { family: Family::Logistic, value: mu }
    }
}

/// A finite forward orbit `z₀ … z_n` together with the running derivative
/// products `derivs[k] = Df^k(z₀)` (so `derivs[0] = 1`).
#[derive(Debug, Clone)]
pub struct OrbitSegment {
    points: Vec<Complex64>,
    derivs: Vec<Complex64>,
}

impl OrbitSegment {
    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn derivs(&self) -> &[Complex64] {
        &self.derivs
    }

    /// Number of iterations, i.e. `points().len() - 1`.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }
}

pub fn apply_q(c: Complex64, z: Complex64) -> Complex64 {
    z * z + c
}

pub fn apply_f(mu: Complex64, z: Complex64) -> Complex64 {
    mu * z * (Complex64::new(1.0, 0.0) - z)
}

/// Real-restricted logistic map, used by the real Cantor machinery.
pub fn apply_f_real(mu: f64, z: f64) -> f64 {
    mu * z * (1.0 - z)
}

pub fn deriv_q(_c: Complex64, z: Complex64) -> Complex64 {
    2.0 * z
}

pub fn deriv_f(mu: Complex64, z: Complex64) -> Complex64 {
    mu * (Complex64::new(1.0, 0.0) - 2.0 * z)
}

pub fn deriv_f_real(mu: f64, z: f64) -> f64 {
    mu * (1.0 - 2.0 * z)
}

/// A fixed point together with its multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub point: Complex64,
    pub multiplier: Complex64,
}

/// Both fixed points of the family member.
///
/// Quadratic: `β = (1+√(1−4c))/2` (listed first, principal square root)
/// and `α = (1−√(1−4c))/2`, with multipliers `2β`, `2α`. Logistic: `0` with
/// multiplier `μ` and `1 − 1/μ` with multiplier `2 − μ`.
pub fn fixed_points(p: &Parameter) -> Result<Vec<FixedPoint>, FamilyError> {
    match p.family {
        Family::Quadratic => {
            let root = (Complex64::new(1.0, 0.0) - 4.0 * p.value).sqrt();
            let beta = (Complex64::new(1.0, 0.0) + root) / 2.0;
            let alpha = (Complex64::new(1.0, 0.0) - root) / 2.0;
            Ok(vec![
                FixedPoint { point: beta, multiplier: 2.0 * beta },
                FixedPoint { point: alpha, multiplier: 2.0 * alpha },
            ])
        }
        Family::Logistic => {
            let mu = p.value;
            if mu.norm() == 0.0 {
                return Err(FamilyError::ZeroMu);
            }
            let one = Complex64::new(1.0, 0.0);
            Ok(vec![
                FixedPoint { point: Complex64::new(0.0, 0.0), multiplier: mu },
                FixedPoint { point: one - one / mu, multiplier: 2.0 * one - mu },
            ])
        }
    }
}

/// Repelling fixed point `β(c)` of the quadratic map for real `c ≤ 1/4`.
pub fn beta_real(c: f64) -> f64 {
    (1.0 + (1.0 - 4.0 * c).sqrt()) / 2.0
}

/// Forward orbit with derivative cocycle. Stops with an error at the first
/// non-finite value instead of propagating NaN.
pub fn orbit(p: &Parameter, z0: Complex64, n: usize) -> Result<OrbitSegment, FamilyError> {
    let step: fn(Complex64, Complex64) -> Complex64;
    let dstep: fn(Complex64, Complex64) -> Complex64;
    match p.family {
        Family::Quadratic => {
            step = apply_q;
            dstep = deriv_q;
        }
        Family::Logistic => {
            step = apply_f;
            dstep = deriv_f;
        }
    }
    let mut points = Vec::with_capacity(n + 1);
    let mut derivs = Vec::with_capacity(n + 1);
    points.push(z0);
    derivs.push(Complex64::new(1.0, 0.0));
    for k in 0..n {
        let d = derivs[k] * dstep(p.value, points[k]);
        let z = step(p.value, points[k]);
        if !z.is_finite() || !d.is_finite() {
            return Err(FamilyError::NonFinite { index: k + 1 });
        }
        points.push(z);
        derivs.push(d);
    }
    Ok(OrbitSegment { points, derivs })
}

/// Conjugacy to quadratic coordinates: `w = −μz + μ/2`.
pub fn to_quadratic(mu: Complex64, z: Complex64) -> Complex64 {
    -mu * z + mu / 2.0
}

/// Inverse of [`to_quadratic`]; undefined at `μ = 0`.
pub fn to_logistic(mu: Complex64, w: Complex64) -> Result<Complex64, FamilyError> {
    if mu.norm() == 0.0 {
        return Err(FamilyError::ZeroMu);
    }
    Ok(Complex64::new(0.5, 0.0) - w / mu)
}

/// Quadratic parameter conjugate to logistic `μ`: `c = μ(2−μ)/4`.
pub fn c_from_mu(mu: Complex64) -> Complex64 {
    mu * (Complex64::new(2.0, 0.0) - mu) / 4.0
}

/// Logistic parameter for quadratic `c`, on the branch `μ = 1 + √(1−4c)`.
///
/// This is the branch with `μ > 1` for real `c < 1/4`; the mirror branch
/// `1 − √(1−4c)` carries dynamics that are an affine copy and is not exposed.
pub fn mu_from_c(c: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) + (Complex64::new(1.0, 0.0) - 4.0 * c).sqrt()
}
