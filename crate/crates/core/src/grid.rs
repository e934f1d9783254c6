//! Uniform-grid bucketing for exact nearest-neighbor queries in the plane.
//!
//! Points are bucketed at a base cell size (the median nearest-neighbor
//! spacing of the indexed cloud), with a pyramid of coarser occupancy
//! levels on top. Queries run best-first over the implicit quadtree:
//! a cell is pruned only when its minimal possible distance provably
//! exceeds the current best, so query results are identical to a
//! brute-force scan (same point-pair distances, same minima) even for
//! queries far from the cloud.

use num_complex::Complex64;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

/// Multiplicative slack on pruning comparisons, covering the 1-ulp rounding
/// of the cell lower bound. Pruning with slack only admits extra
/// candidates; it never skips a potential minimum.
const PRUNE_SLACK: f64 = 1.0 + 1e-12;

pub(crate) struct GridIndex<'a> {
    points: &'a [Complex64],
    /// Base cell size (level 0).
    cell: f64,
    base: HashMap<(i64, i64), Vec<u32>>,
    /// Coarser occupancy levels; level k has cell size `cell * 2^k`.
    upper: Vec<HashSet<(i64, i64)>>,
}

fn dist(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

#[derive(PartialEq)]
struct HeapKey(f64, usize, i64, i64);

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .total_cmp(&other.0)
            .then(self.1.cmp(&other.1))
            .then(self.2.cmp(&other.2))
            .then(self.3.cmp(&other.3))
    }
}

impl<'a> GridIndex<'a> {
    /// `cell` must be positive and finite; `points` non-empty.
    pub fn build(points: &'a [Complex64], cell: f64) -> Self {
        assert!(!points.is_empty());
        assert!(cell.is_finite() && cell > 0.0);
        let mut base: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            base.entry(key_for(cell, *p)).or_default().push(i as u32);
        }
        let mut upper = Vec::new();
        let mut current: HashSet<(i64, i64)> = base.keys().copied().collect();
        while current.len() > 4 && upper.len() < 60 {
            let next: HashSet<(i64, i64)> = current
                .iter()
                .map(|&(i, j)| (i.div_euclid(2), j.div_euclid(2)))
                .collect();
            upper.push(next.clone());
            current = next;
        }
        Self { points, cell, base, upper }
    }

    /// Index and distance of the nearest stored point to `q`.
    pub fn nearest(&self, q: Complex64) -> (usize, f64) {
        self.nearest_filtered(q, u32::MAX)
    }

    /// Nearest stored point whose index differs from `skip`.
    pub fn nearest_excluding(&self, q: Complex64, skip: usize) -> (usize, f64) {
        self.nearest_filtered(q, skip as u32)
    }

    /// Lower bound for the distance from `q` to any point in cell `(i, j)`
    /// of size `size`.
    fn cell_min_dist(&self, q: Complex64, level: usize, i: i64, j: i64) -> f64 {
        let size = self.cell * (1u64 << level) as f64;
        let dx = (i as f64 * size - q.re).max(q.re - (i + 1) as f64 * size).max(0.0);
        let dy = (j as f64 * size - q.im).max(q.im - (j + 1) as f64 * size).max(0.0);
        dx.hypot(dy)
    }

    fn nearest_filtered(&self, q: Complex64, skip: u32) -> (usize, f64) {
        let mut best = f64::INFINITY;
        let mut best_idx = u32::MAX;
        let top = self.upper.len();
        let mut heap: BinaryHeap<Reverse<HeapKey>> = BinaryHeap::new();
        let top_cells: Vec<(i64, i64)> = if top == 0 {
            self.base.keys().copied().collect()
        } else {
            self.upper[top - 1].iter().copied().collect()
        };
        for (i, j) in top_cells {
            heap.push(Reverse(HeapKey(self.cell_min_dist(q, top, i, j), top, i, j)));
        }
        while let Some(Reverse(HeapKey(d, level, i, j))) = heap.pop() {
            if d > best * PRUNE_SLACK {
                break;
            }
            if level == 0 {
                if let Some(idxs) = self.base.get(&(i, j)) {
                    for &idx in idxs {
                        if idx == skip {
                            continue;
                        }
                        let pd = dist(self.points[idx as usize], q);
                        if pd < best || (pd == best && idx < best_idx) {
                            best = pd;
                            best_idx = idx;
                        }
                    }
                }
                continue;
            }
            let child_level = level - 1;
            for ci in (2 * i)..=(2 * i + 1) {
                for cj in (2 * j)..=(2 * j + 1) {
                    let occupied = if child_level == 0 {
                        self.base.contains_key(&(ci, cj))
                    } else {
                        self.upper[child_level - 1].contains(&(ci, cj))
                    };
                    if !occupied {
                        continue;
                    }
                    let cd = self.cell_min_dist(q, child_level, ci, cj);
                    if cd <= best * PRUNE_SLACK {
                        heap.push(Reverse(HeapKey(cd, child_level, ci, cj)));
                    }
                }
            }
        }
        debug_assert!(best_idx != u32::MAX, "query against empty candidate set");
        (best_idx as usize, best)
    }
}

fn key_for(cell: f64, p: Complex64) -> (i64, i64) {
    ((p.re / cell).floor() as i64, (p.im / cell).floor() as i64)
}

fn bbox_diag(points: &[Complex64]) -> f64 {
    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.re = lo.re.min(p.re);
        lo.im = lo.im.min(p.im);
        hi.re = hi.re.max(p.re);
        hi.im = hi.im.max(p.im);
    }
    ((hi.re - lo.re).powi(2) + (hi.im - lo.im).powi(2)).sqrt()
}

/// Nearest-neighbor distance of every point to the rest of the cloud.
pub(crate) fn nearest_neighbor_distances(points: &[Complex64]) -> Vec<f64> {
    if points.len() < 2 {
        return vec![0.0; points.len()];
    }
    let cell = fallback_cell(points);
    let index = GridIndex::build(points, cell);
    use rayon::prelude::*;
    points
        .par_iter()
        .enumerate()
        .map(|(i, &p)| index.nearest_excluding(p, i).1)
        .collect()
}

/// Provisional cell size from the bounding box, used before any spacing
/// statistics exist.
pub(crate) fn fallback_cell(points: &[Complex64]) -> f64 {
    let diag = bbox_diag(points);
    if diag > 0.0 && diag.is_finite() {
        diag / (points.len() as f64).sqrt().max(1.0)
    } else {
        1.0
    }
}

/// Median nearest-neighbor spacing, with bounding-box fallback when the
/// cloud is degenerate (duplicates, single point).
pub(crate) fn median_nn_spacing(points: &[Complex64]) -> f64 {
    let mut nn = nearest_neighbor_distances(points);
    nn.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = nn[nn.len() / 2];
    if median > 0.0 && median.is_finite() {
        median
    } else {
        fallback_cell(points)
    }
}

/// Largest nearest-neighbor gap of the cloud (0 for fewer than 2 points).
pub(crate) fn max_nn_gap(points: &[Complex64]) -> f64 {
    nearest_neighbor_distances(points)
        .into_iter()
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_nearest(points: &[Complex64], q: Complex64) -> f64 {
        points.iter().map(|&p| dist(p, q)).fold(f64::INFINITY, f64::min)
    }

    fn pseudo_random_points(n: usize, seed: u64) -> Vec<Complex64> {
        let mut pts = Vec::new();
        let mut x = seed;
        let mut next = || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (x >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..n {
            pts.push(Complex64::new(next() * 4.0 - 2.0, next() * 4.0 - 2.0));
        }
        pts
    }

    #[test]
    fn nearest_matches_brute_force() {
        let pts = pseudo_random_points(500, 0x243f6a8885a308d3);
        let index = GridIndex::build(&pts, median_nn_spacing(&pts));
        let queries = pseudo_random_points(300, 0x13198a2e03707344);
        for q in queries {
            let (_, d) = index.nearest(q);
            assert_eq!(d.to_bits(), brute_nearest(&pts, q).to_bits());
        }
    }

    #[test]
    fn far_queries_are_exact() {
        // queries far outside the cloud exercise the pyramid descent
        let pts = pseudo_random_points(2000, 99);
        let index = GridIndex::build(&pts, median_nn_spacing(&pts));
        for q in [
            Complex64::new(50.0, -3.0),
            Complex64::new(-120.0, 80.0),
            Complex64::new(0.0, 1000.0),
        ] {
            let (_, d) = index.nearest(q);
            assert_eq!(d.to_bits(), brute_nearest(&pts, q).to_bits());
        }
    }

    #[test]
    fn tiny_cell_sizes_still_work() {
        // base cells far smaller than typical query distances
        let pts = pseudo_random_points(300, 7);
        let index = GridIndex::build(&pts, 1e-7);
        for q in pseudo_random_points(100, 8) {
            let (_, d) = index.nearest(q);
            assert_eq!(d.to_bits(), brute_nearest(&pts, q).to_bits());
        }
    }

    #[test]
    fn nn_distances_on_a_line() {
        let pts: Vec<_> = (0..5).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let nn = nearest_neighbor_distances(&pts);
        assert_eq!(nn, vec![1.0; 5]);
        assert_eq!(max_nn_gap(&pts), 1.0);
    }
}
