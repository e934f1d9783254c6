//! Raster and vector output: escape-time membership as binary PPM (P6),
//! point clouds as SVG. Everything is formatted deterministically so
//! identical inputs produce byte-identical files.

use holomotion::julia::{membership_escape, Membership, PointCloud};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct View {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Default for View {
    fn default() -> Self {
        Self { xmin: -2.0, xmax: 2.0, ymin: -2.0, ymax: 2.0 }
    }
}

fn shade(k: usize, max_iter: usize) -> [u8; 3] {
    let t = 1.0 - (k as f64 / max_iter as f64).min(1.0);
    let base = 40.0 + 215.0 * t * t;
    [(base * 0.45) as u8, (base * 0.7) as u8, base as u8]
}

/// Escape-time membership raster for the quadratic map on a pixel grid.
/// Bounded pixels are black; escaped pixels shade by first escape step.
pub fn escape_ppm(c: Complex64, view: View, width: u32, height: u32, max_iter: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(3 * (width as usize) * (height as usize) + 32);
    out.extend_from_slice(format!("P6\n{width} {height}\n255\n").as_bytes());
    for row in 0..height {
        // image rows run top (ymax) to bottom
        let y = view.ymax - (row as f64 + 0.5) / height as f64 * (view.ymax - view.ymin);
        for col in 0..width {
            let x = view.xmin + (col as f64 + 0.5) / width as f64 * (view.xmax - view.xmin);
            let px = match membership_escape(c, Complex64::new(x, y), max_iter) {
                Membership::Bounded => [0, 0, 0],
                Membership::Escaped(k) => shade(k, max_iter),
            };
            out.extend_from_slice(&px);
        }
    }
    out
}

/// Cloud as an SVG scatter plot (one circle per point).
pub fn cloud_svg(cloud: &PointCloud) -> String {
    let pts = cloud.points();
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        xmin = xmin.min(p.re);
        xmax = xmax.max(p.re);
        ymin = ymin.min(p.im);
        ymax = ymax.max(p.im);
    }
    let span = (xmax - xmin).max(ymax - ymin).max(1e-9);
    let margin = span * 0.05;
    let r = span * 0.003;
    let mut svg = String::with_capacity(pts.len() * 64 + 256);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
        xmin - margin,
        -(ymax + margin), // svg y axis points down
        xmax - xmin + 2.0 * margin,
        ymax - ymin + 2.0 * margin,
    ));
    for p in pts {
        svg.push_str(&format!(
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\"/>\n",
            p.re, -p.im, r
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ppm_header_and_size() {
        let img = escape_ppm(Complex64::new(0.0, 0.0), View::default(), 16, 8, 50);
        assert!(img.starts_with(b"P6\n16 8\n255\n"));
        assert_eq!(img.len(), b"P6\n16 8\n255\n".len() + 3 * 16 * 8);
    }

    #[test]
    fn interior_pixels_are_black() {
        // center pixel of the unit-disk Julia set is bounded
        let img = escape_ppm(Complex64::new(0.0, 0.0), View::default(), 3, 3, 100);
        let header = b"P6\n3 3\n255\n".len();
        let center = header + 3 * (3 + 1);
        assert_eq!(&img[center..center + 3], &[0, 0, 0]);
    }
}
