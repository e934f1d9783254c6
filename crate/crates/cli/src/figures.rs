//! Figure data: the cauliflower image sequence, the tracked-preimage
//! curves over the real parameter segment, and the real Cantor-set motion.

use crate::render::{escape_ppm, View};
use holomotion::julia::cantor_sample_real;
use holomotion::motion::{all_words, track_prefixed, word_to_string};
use num_complex::Complex64;
use std::fs;
use std::path::Path;

/// Julia-set images for c = k/20, k = 0..=5.
pub fn fig1_top(out_dir: &Path, width: u32, height: u32) -> std::io::Result<Vec<String>> {
    let mut written = Vec::new();
    for k in 0..=5u32 {
        let c = k as f64 / 20.0;
        let view = View { xmin: -1.8, xmax: 1.8, ymin: -1.8, ymax: 1.8 };
        let img = escape_ppm(Complex64::new(c, 0.0), view, width, height, 300);
        let name = format!("fig1_top_k{k}.ppm");
        fs::write(out_dir.join(&name), img)?;
        written.push(name);
    }
    Ok(written)
}

/// Curves c ↦ z(c) for every branch word of depth ≤ 6, sampled at 128
/// parameter values across [0, 1/4]. Long CSV: word,c,re,im.
pub fn fig1_bottom(out_dir: &Path) -> std::io::Result<Vec<String>> {
    let mut csv = String::from("word,c,re,im\n");
    for word in all_words(6) {
        let label = word_to_string(&word);
        for i in 0..128u32 {
            let c = 0.25 * i as f64 / 127.0;
            let z = track_prefixed(c, &word).expect("c in range");
            csv.push_str(&format!("{label},{c:.14e},{:.14e},{:.14e}\n", z.re, z.im));
        }
    }
    let name = "fig1_bottom.csv".to_string();
    fs::write(out_dir.join(&name), csv)?;
    Ok(vec![name])
}

/// Real Cantor Julia sets for a μ sweep down to 4.
pub fn fig2(out_dir: &Path, depth: usize) -> std::io::Result<Vec<String>> {
    let mut written = Vec::new();
    for mu in [4.0, 4.1, 4.3, 4.6, 5.0] {
        let cloud = cantor_sample_real(mu, depth).expect("mu >= 4");
        let name = format!("fig2_mu{mu:.1}.csv");
        fs::write(out_dir.join(&name), cloud.csv_string())?;
        written.push(name);
    }
    Ok(written)
}
