//! Exact Hausdorff distance between finite point clouds.
//!
//! Queries go through a uniform grid whose cell size is the median
//! nearest-neighbor spacing of the larger cloud; pruning is conservative,
//! so results are identical to the brute-force double loop (same point-pair
//! distances, same maxima of minima). Sampling error is reported as the sum
//! of the two covering radii, and verifications whose tolerance budget is
//! dominated by it come back inconclusive rather than pass.

use crate::families::beta_real;
use crate::grid::{self, GridIndex};
use crate::julia::{sample_inverse_iteration, CloudMeta, PointCloud};
use crate::report::{complex_value, Report};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HausdorffError {
    #[error("point clouds must be non-empty")]
    EmptyCloud,
}

/// Both directed distances, their maximum, the attaining pair, and the
/// additive sampling error (sum of covering radii).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport {
    pub directed_ab: f64,
    pub directed_ba: f64,
    pub hausdorff: f64,
    pub witness_a: Complex64,
    pub witness_b: Complex64,
    pub sampling_error: f64,
}

impl DistanceReport {
    pub fn json_value(&self) -> serde_json::Value {
        json!({
            "directed_ab": self.directed_ab,
            "directed_ba": self.directed_ba,
            "hausdorff": self.hausdorff,
            "witness_a": [self.witness_a.re, self.witness_a.im],
            "witness_b": [self.witness_b.re, self.witness_b.im],
            "sampling_error": self.sampling_error,
        })
    }
}

/// `sup_{a} min_{b} |a − b|` with the attaining indices (farthest `a`, its
/// nearest `b`). Ties resolve to the smallest index.
fn directed(from: &[Complex64], to_index: &GridIndex) -> (f64, usize, usize) {
    let nearest: Vec<(usize, f64)> = from.par_iter().map(|&p| to_index.nearest(p)).collect();
    let mut max_d = f64::NEG_INFINITY;
    let mut far = 0usize;
    let mut near = 0usize;
    for (i, &(bi, d)) in nearest.iter().enumerate() {
        if d > max_d {
            max_d = d;
            far = i;
            near = bi;
        }
    }
    (max_d, far, near)
}

/// Exact Hausdorff distance between the two clouds.
pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud) -> Result<DistanceReport, HausdorffError> {
    if a.is_empty() || b.is_empty() {
        return Err(HausdorffError::EmptyCloud);
    }
    let larger = if a.len() >= b.len() { a } else { b };
    let cell = grid::median_nn_spacing(larger.points());
    let index_a = GridIndex::build(a.points(), cell);
    let index_b = GridIndex::build(b.points(), cell);
    let (dab, a_far, b_near) = directed(a.points(), &index_b);
    let (dba, b_far, a_near) = directed(b.points(), &index_a);
    let (witness_a, witness_b) = if dab >= dba {
        (a.points()[a_far], b.points()[b_near])
    } else {
        (a.points()[a_near], b.points()[b_far])
    };
    Ok(DistanceReport {
        directed_ab: dab,
        directed_ba: dba,
        hausdorff: dab.max(dba),
        witness_a,
        witness_b,
        sampling_error: a.covering_radius() + b.covering_radius(),
    })
}

/// Brute-force O(|A||B|) reference of the same quantity. Kept as the
/// independent oracle for the grid-accelerated path; prefer
/// [`hausdorff_distance`] for anything but cross-checks.
pub fn hausdorff_distance_brute(
    a: &PointCloud,
    b: &PointCloud,
) -> Result<DistanceReport, HausdorffError> {
    if a.is_empty() || b.is_empty() {
        return Err(HausdorffError::EmptyCloud);
    }
    let one_way = |from: &[Complex64], to: &[Complex64]| -> (f64, usize, usize) {
        let nearest: Vec<(usize, f64)> = from
            .par_iter()
            .map(|&p| {
                let mut best = f64::INFINITY;
                let mut best_j = 0usize;
                for (j, &q) in to.iter().enumerate() {
                    let d = (p - q).norm();
                    if d < best {
                        best = d;
                        best_j = j;
                    }
                }
                (best_j, best)
            })
            .collect();
        let mut max_d = f64::NEG_INFINITY;
        let mut far = 0usize;
        let mut near = 0usize;
        for (i, &(j, d)) in nearest.iter().enumerate() {
            if d > max_d {
                max_d = d;
                far = i;
                near = j;
            }
        }
        (max_d, far, near)
    };
    let (dab, a_far, b_near) = one_way(a.points(), b.points());
    let (dba, b_far, a_near) = one_way(b.points(), a.points());
    let (witness_a, witness_b) = if dab >= dba {
        (a.points()[a_far], b.points()[b_near])
    } else {
        (a.points()[a_near], b.points()[b_far])
    };
    Ok(DistanceReport {
        directed_ab: dab,
        directed_ba: dba,
        hausdorff: dab.max(dba),
        witness_a,
        witness_b,
        sampling_error: a.covering_radius() + b.covering_radius(),
    })
}

/// Exact-distance verification (claim id `corollary`): the Hausdorff
/// distance between the Julia samples at real `c ∈ [0, 1/4)` and at `1/4`
/// equals `√(1/4−c)`, attained by the pair (parabolic point `1/2`,
/// repelling fixed point `β(c)`). Witness proximity is checked at `2·tol`.
pub fn verify_exact_distance(c: f64, depth: usize, tol: f64) -> Report {
    let mut report = Report::new("corollary");
    report.param("c", json!(c));
    report.param("depth", json!(depth));
    report.tolerance("distance", tol);
    report.tolerance("witness", 2.0 * tol);
    if !(0.0..0.25).contains(&c) {
        report.fail("c must lie in [0, 1/4)".into());
        return report;
    }
    let cloud_c = match sample_inverse_iteration(Complex64::new(c, 0.0), depth) {
        Ok(cl) => cl,
        Err(e) => {
            report.fail(format!("sampling failed: {e}"));
            return report;
        }
    };
    let cloud_quarter = match sample_inverse_iteration(Complex64::new(0.25, 0.0), depth) {
        Ok(cl) => cl,
        Err(e) => {
            report.fail(format!("sampling failed: {e}"));
            return report;
        }
    };
    let d = hausdorff_distance(&cloud_c, &cloud_quarter).expect("non-empty clouds");
    let expected = (0.25 - c).sqrt();
    let err = (d.hausdorff - expected).abs();
    report.metric("distance", json!(d.hausdorff));
    report.metric("expected", json!(expected));
    report.metric("error", json!(err));
    report.metric("sampling_error", json!(d.sampling_error));
    report.metric("witness_c_side", complex_value(d.witness_a));
    report.metric("witness_quarter_side", complex_value(d.witness_b));
    if err > tol + d.sampling_error {
        report.fail(format!(
            "|d_H − √(1/4−c)| = {err} exceeds {}",
            tol + d.sampling_error
        ));
    } else if d.sampling_error > expected {
        // can't distinguish the claimed distance from sampling noise
        report.inconclusive(format!(
            "sampling error {} dominates the claimed distance {expected}; raise the depth",
            d.sampling_error
        ));
        return report;
    }
    // Both Julia sets are symmetric under z ↦ −z, so attaining pairs come
    // in mirror pairs: (1/2, β) and (−1/2, −β) realize the same distance.
    // The witness check folds that symmetry.
    let mirror_dist = |w: Complex64, target: Complex64| -> f64 {
        (w - target).norm().min((w + target).norm())
    };
    let beta = Complex64::new(beta_real(c), 0.0);
    let parabolic = Complex64::new(0.5, 0.0);
    let witness_tol = 2.0 * tol;
    let d_beta = mirror_dist(d.witness_a, beta);
    let d_parab = mirror_dist(d.witness_b, parabolic);
    report.metric("witness_dist_to_beta", json!(d_beta));
    report.metric("witness_dist_to_parabolic", json!(d_parab));
    if d_beta > witness_tol {
        report.fail(format!("witness on the J(q_c) side is {d_beta} from ±β(c)"));
    }
    if d_parab > witness_tol {
        report.fail(format!("witness on the J(q_1/4) side is {d_parab} from ±1/2"));
    }
    report
}

/// Distance-bound verification (claim id `remark22`): for `μ ∈ (1, 2)` the
/// logistic Julia sets satisfy `d_H(J(f_μ), J(f_1)) ≤ (2+√2)(μ−1)/2`.
/// The logistic clouds are quadratic samples carried through the inverse
/// conjugacy.
pub fn verify_distance_bound(mu: f64, depth: usize, tol: f64) -> Report {
    let mut report = Report::new("remark22");
    report.param("mu", json!(mu));
    report.param("depth", json!(depth));
    report.tolerance("slack", tol);
    if !(mu > 1.0 && mu < 2.0) {
        report.fail("mu must lie in (1, 2)".into());
        return report;
    }
    let to_logistic_cloud = |m: f64, cloud: &PointCloud| -> PointCloud {
        let mapped: Vec<Complex64> = cloud
            .points()
            .iter()
            .map(|&w| Complex64::new(0.5, 0.0) - w / m)
            .collect();
        PointCloud::from_points(
            mapped,
            CloudMeta {
                parameter: crate::families::Parameter::logistic(Complex64::new(m, 0.0)),
                depth: cloud.meta().depth,
            },
        )
    };
    let c = mu * (2.0 - mu) / 4.0;
    report.param("c", json!(c));
    let cloud_mu = match sample_inverse_iteration(Complex64::new(c, 0.0), depth) {
        Ok(cl) => to_logistic_cloud(mu, &cl),
        Err(e) => {
            report.fail(format!("sampling failed: {e}"));
            return report;
        }
    };
    let cloud_one = match sample_inverse_iteration(Complex64::new(0.25, 0.0), depth) {
        Ok(cl) => to_logistic_cloud(1.0, &cl),
        Err(e) => {
            report.fail(format!("sampling failed: {e}"));
            return report;
        }
    };
    let d = hausdorff_distance(&cloud_mu, &cloud_one).expect("non-empty clouds");
    let bound = (2.0 + 2.0f64.sqrt()) * (mu - 1.0) / 2.0;
    report.metric("distance", json!(d.hausdorff));
    report.metric("bound", json!(bound));
    report.metric("sampling_error", json!(d.sampling_error));
    report.metric("witness_mu_side", complex_value(d.witness_a));
    report.metric("witness_one_side", complex_value(d.witness_b));
    if d.hausdorff > bound + tol + d.sampling_error {
        report.fail(format!(
            "d_H = {} exceeds (2+√2)(μ−1)/2 + slack = {}",
            d.hausdorff,
            bound + tol + d.sampling_error
        ));
    } else if d.sampling_error > bound + tol {
        report.inconclusive(format!(
            "sampling error {} dominates the bound {bound}; raise the depth",
            d.sampling_error
        ));
    }
    report
}
