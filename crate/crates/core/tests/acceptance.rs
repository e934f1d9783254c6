//! Acceptance suite: every quantitative claim the library makes, checked at
//! its stated tolerance. One test (and one printed pass/fail line) per
//! criterion; independent oracles (closed forms, finite differences, brute
//! force) live in this file and never share code with the paths they check.

use holomotion::families::{beta_real, orbit, Parameter};
use holomotion::hausdorff::{
    hausdorff_distance, verify_distance_bound, verify_exact_distance,
};
use holomotion::julia::{cantor_sample_real, sample_inverse_iteration, CloudMeta, PointCloud};
use holomotion::metric::{inv_deriv_bounds, koenigs, verify_expansion};
use holomotion::motion::{
    dzdc_series, dzdmu_series, track_prefixed, verify_banded_orbit,
    verify_derivative_bound_f_grid, verify_derivative_bound_q, verify_holder_all,
    verify_transported_bound, Branch,
};
use holomotion::report::Verdict;
use holomotion::symbolic::{code_point, critical_itinerary, kneading_sequence, Angle};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(name: &str, ok: bool, detail: String) {
    if ok {
        println!("acceptance {name}: PASS ({detail})");
    } else {
        println!("acceptance {name}: FAIL ({detail})");
        panic!("acceptance {name} failed: {detail}");
    }
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn c01_sharpness_of_the_dzdc_bound_at_beta() {
    let mut worst = 0.0f64;
    for c in [0.0f64, 0.1, 0.2, 0.24, 0.2499] {
        let expected = -1.0 / (2.0 * (0.25 - c).sqrt());
        let r = dzdc_series(cx(c), cx(beta_real(c)), expected.abs() * 1e-11).unwrap();
        let rel = (r.value - cx(expected)).norm() / expected.abs();
        worst = worst.max(rel);
    }
    check(
        "01 sharpness of |dz/dc| at the fixed point",
        worst <= 1e-10,
        format!("worst relative error {worst:.3e} vs 1e-10"),
    );
}

#[test]
fn c02_dzdc_bound_over_depth12_clouds() {
    let mut worst_ratio = f64::NEG_INFINITY;
    let mut worst_argmax = 0.0f64;
    for c in [0.0, 0.1, 0.2, 0.24, 0.2499] {
        let cloud = sample_inverse_iteration(cx(c), 12).unwrap();
        assert_eq!(cloud.len(), 4096);
        let report = verify_derivative_bound_q(c, &cloud, 1e-9);
        assert_eq!(report.verdict, Verdict::Pass, "c = {c}: {:?}", report.failures);
        let ratio = report.metrics["max_ratio"].as_f64().unwrap();
        let argmax = report.metrics["argmax_dist_to_beta"].as_f64().unwrap();
        worst_ratio = worst_ratio.max(ratio);
        worst_argmax = worst_argmax.max(argmax);
    }
    check(
        "02 |dz/dc|·2sqrt(1/4-c) <= 1 over clouds, max at the fixed point",
        worst_ratio <= 1.0 + 1e-9 && worst_argmax <= 1e-6,
        format!("max ratio {worst_ratio}, argmax within {worst_argmax:.3e} of ±β"),
    );
}

#[test]
fn c03_dzdmu_at_preimages_of_one() {
    let mut worst = 0.0f64;
    for mu in [4.1f64, 4.5, 5.0] {
        let s = (1.0 - 4.0 / mu).sqrt();
        let expected = 1.0 / (mu * mu.sqrt() * (mu - 4.0).sqrt());
        for (z, sign) in [((1.0 + s) / 2.0, 1.0), ((1.0 - s) / 2.0, -1.0)] {
            let r = dzdmu_series(mu, z, 1e-13).unwrap();
            worst = worst.max((r.value.re - sign * expected).abs());
            assert!(r.rigorous);
        }
    }
    check(
        "03 |dz/dmu| at preimages of 1 matches ±1/(mu·sqrt(mu)·sqrt(mu-4))",
        worst <= 1e-10,
        format!("worst error {worst:.3e} vs 1e-10"),
    );
}

#[test]
fn c04_dzdmu_at_the_interior_fixed_point() {
    let mut worst = 0.0f64;
    for mu in [4.5, 5.0, 6.0] {
        let r = dzdmu_series(mu, 1.0 - 1.0 / mu, 1e-13).unwrap();
        worst = worst.max((r.value.re - 1.0 / (mu * mu)).abs());
    }
    check(
        "04 dz/dmu at 1-1/mu equals 1/mu^2",
        worst <= 1e-10,
        format!("worst error {worst:.3e} vs 1e-10"),
    );
}

#[test]
fn c05_dzdmu_scaling_constant_across_the_mu_grid() {
    let report = verify_derivative_bound_f_grid(&[4.1, 4.01, 4.001, 4.0001], 14, 1e-10, 0.01, 4.0);
    let spread = report.metrics["spread"].as_f64().unwrap();
    let sup_max = report.metrics["sup_max"].as_f64().unwrap();
    check(
        "05 sup |dz/dmu|·sqrt(mu-4) stays within a factor 4 across the grid",
        report.verdict == Verdict::Pass && spread < 4.0 && sup_max.is_finite(),
        format!("empirical constant in [{}, {sup_max}], spread {spread:.4}",
            report.metrics["sup_min"]),
    );
}

#[test]
fn c06_exact_hausdorff_distance_to_the_parabolic_julia_set() {
    let mut detail = String::new();
    let mut ok = true;
    for c in [0.0, 0.1, 0.1875] {
        let report = verify_exact_distance(c, 16, 0.01);
        let err = report.metrics["error"].as_f64().unwrap();
        let sampling = report.metrics["sampling_error"].as_f64().unwrap();
        let w_beta = report.metrics["witness_dist_to_beta"].as_f64().unwrap();
        let w_parab = report.metrics["witness_dist_to_parabolic"].as_f64().unwrap();
        ok &= report.verdict == Verdict::Pass
            && err <= 0.01 + sampling
            && w_beta <= 0.02
            && w_parab <= 0.02;
        detail.push_str(&format!("c={c}: err {err:.2e}, witnesses {w_beta:.2e}/{w_parab:.2e}; "));
    }
    check("06 d_H(J(q_c), J(q_1/4)) = sqrt(1/4-c) with the right witnesses", ok, detail);
}

#[test]
fn c07_holder_bound_along_branch_words() {
    let report = verify_holder_all(6, &[0.0, 0.1, 0.2, 0.24], 1e-9, 1e-10);
    let max_excess = report
        .metrics
        .get("fixed_point_equality_error")
        .and_then(|v| v.as_f64())
        .unwrap();
    check(
        "07 |z(c) - z(1/4)| <= sqrt(1/4-c) for all words of depth <= 6",
        report.verdict == Verdict::Pass,
        format!(
            "127 words x 4 parameters, fixed-point equality error {max_excess:.3e}"
        ),
    );
}

#[test]
fn c08_bounded_band_proposition() {
    // largest band containing the whole orbit: delta = min(z_n, 1-z_n)
    let period2 = (5.0 - 5.0f64.sqrt()) / 8.0;
    let period2_delta = (3.0 - 5.0f64.sqrt()) / 8.0;
    let cases = [
        (4.5, 1.0 - 1.0 / 4.5, 2.0 / 9.0),
        (5.0, 0.8, 0.2),
        (4.0, period2, period2_delta),
    ];
    let mut detail = String::new();
    let mut ok = true;
    for (mu, z, delta) in cases {
        let report = verify_banded_orbit(mu, z, delta, 1e-9, 1e-12);
        let mag = report.metrics.get("derivative_magnitude").and_then(|v| v.as_f64());
        ok &= report.verdict == Verdict::Pass;
        detail.push_str(&format!(
            "mu={mu}: |dz/dmu| {:?} <= {:.4}; ",
            mag,
            1.0 / (8.0 * delta)
        ));
    }
    check("08 |dz/dmu| <= 1/(8δ) on banded orbits", ok, detail);
}

#[test]
fn c09_expansion_factor_dominates_sqrt_mu() {
    let mut detail = String::new();
    let mut ok = true;
    for mu in [4.0, 4.1, 4.5] {
        let report = verify_expansion(mu, 14, 1e-12, 1e-9);
        let admissible = report.metrics["admissible_points"].as_u64().unwrap();
        let min_factor = report.metrics["min_factor"].as_f64().unwrap();
        ok &= report.verdict == Verdict::Pass && admissible >= 10_000;
        detail.push_str(&format!("mu={mu}: min {min_factor:.6} on {admissible} pts; "));
    }
    check("09 expansion factor >= sqrt(mu), equal to 2 at mu = 4", ok, detail);
}

#[test]
fn c10_inverse_derivative_bounds_along_random_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0eed);
    let mut checked = 0usize;
    for mu in [4.1, 4.5, 5.0] {
        let cloud = cantor_sample_real(mu, 20).unwrap();
        let param = Parameter::logistic(cx(mu));
        for _ in 0..334 {
            let z = cloud.points()[rng.gen_range(0..cloud.len())];
            let seg = orbit(&param, z, 20).unwrap();
            let bounds = inv_deriv_bounds(mu, &seg).unwrap();
            for (n, b) in bounds.iter().enumerate() {
                assert!(
                    1.0 / seg.derivs()[n].norm() <= b + 1e-12,
                    "bound violated at mu={mu}, z={z}, n={n}"
                );
            }
            checked += 1;
        }
    }
    check(
        "10 1/|Df^n| <= gamma(z_n)/(2A^n) along sampled orbits",
        checked >= 1000,
        format!("{checked} depth-20 orbits checked"),
    );
}

#[test]
fn c11_koenigs_coordinate_against_the_closed_form() {
    let mut worst_value = 0.0f64;
    let mut worst_residual = 0.0f64;
    for z in [0.01, 0.05, 0.09] {
        let k = koenigs(4.0, z, 60).unwrap();
        let exact = z.sqrt().asin().powi(2);
        worst_value = worst_value.max((k.value - exact).abs());
        worst_residual = worst_residual.max(k.residual);
    }
    check(
        "11 koenigs(4, z) matches (arcsin sqrt(z))^2",
        worst_value <= 1e-8 && worst_residual <= 1e-10,
        format!("value error {worst_value:.3e}, residual {worst_residual:.3e}"),
    );
}

#[test]
fn c12_kneading_equals_critical_itinerary() {
    let e = kneading_sequence(Angle::new(1, 2).unwrap(), 64).unwrap();
    let i = critical_itinerary(4.0, 64).unwrap();
    let mut expected = vec![1u8; 64];
    expected[0] = 0;
    check(
        "12 kneading of 1/2 equals the itinerary at mu = 4 (0 then all 1s)",
        e == i && e.prefix(64) == expected,
        format!("64 symbols, sequence {e}"),
    );
}

#[test]
fn c13_distance_bound_and_transported_derivatives_near_mu_equals_one() {
    let mut detail = String::new();
    let mut ok = true;
    for mu in [1.05, 1.5, 1.9] {
        let report = verify_distance_bound(mu, 16, 0.01);
        let dist = report.metrics["distance"].as_f64().unwrap();
        let bound = report.metrics["bound"].as_f64().unwrap();
        let sampling = report.metrics["sampling_error"].as_f64().unwrap();
        ok &= report.verdict != Verdict::Fail && dist <= bound + 0.01 + sampling;
        let transported = verify_transported_bound(mu, 4, 1e-9);
        let max_mag = transported.metrics["max_transported_magnitude"].as_f64().unwrap();
        ok &= transported.verdict == Verdict::Pass;
        detail.push_str(&format!(
            "mu={mu}: d_H {dist:.4} vs bound {bound:.4} ({}), transported max {max_mag:.4}; ",
            report.verdict.as_str()
        ));
    }
    check(
        "13 d_H(J(f_mu), J(f_1)) <= (2+sqrt(2))(mu-1)/2 and transported |dz/dmu| <= (2+sqrt(2))/2",
        ok,
        detail,
    );
}

#[test]
fn c14_series_derivatives_match_finite_differences_of_tracked_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x14c0de);
    let h = 1e-5;
    let mut worst_q = 0.0f64;
    for _ in 0..20 {
        let len = rng.gen_range(1..=6);
        let word: Vec<Branch> = (0..len)
            .map(|_| if rng.gen_bool(0.5) { Branch::Plus } else { Branch::Minus })
            .collect();
        let c = rng.gen_range(0.02..0.23);
        let z = track_prefixed(c, &word).unwrap();
        let series = dzdc_series(cx(c), z, 1e-9).unwrap();
        let fd = (track_prefixed(c + h, &word).unwrap() - track_prefixed(c - h, &word).unwrap())
            / (2.0 * h);
        worst_q = worst_q.max((series.value - fd).norm());
    }
    let mut worst_f = 0.0f64;
    for _ in 0..20 {
        let len = rng.gen_range(1..=6);
        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..=1)).collect();
        let mu = rng.gen_range(4.2..6.0);
        let z = code_point(mu, &word).unwrap();
        let series = dzdmu_series(mu, z, 1e-11).unwrap();
        let fd = (code_point(mu + h, &word).unwrap() - code_point(mu - h, &word).unwrap())
            / (2.0 * h);
        worst_f = worst_f.max((series.value.re - fd).abs());
    }
    check(
        "14 series derivatives match central differences of tracked points",
        worst_q <= 1e-6 && worst_f <= 1e-6,
        format!("worst |series - fd|: quadratic {worst_q:.3e}, logistic {worst_f:.3e}"),
    );
}

#[test]
fn c15_grid_distance_is_bit_identical_to_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a1d);
    let meta = || CloudMeta {
        parameter: Parameter::quadratic(cx(0.0)),
        depth: 0,
    };
    let random_cloud = |rng: &mut ChaCha8Rng, n: usize| -> PointCloud {
        let pts: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        PointCloud::from_points(pts, meta())
    };
    for pair in 0..50 {
        let (na, nb) = if pair < 46 {
            (rng.gen_range(30..1500), rng.gen_range(30..1500))
        } else {
            (rng.gen_range(4000..=10_000), rng.gen_range(4000..=10_000))
        };
        let a = random_cloud(&mut rng, na);
        let b = random_cloud(&mut rng, nb);
        let fast = hausdorff_distance(&a, &b).unwrap();
        let brute = holomotion::hausdorff::hausdorff_distance_brute(&a, &b).unwrap();
        assert_eq!(
            fast.hausdorff.to_bits(),
            brute.hausdorff.to_bits(),
            "pair {pair} ({na} x {nb} points)"
        );
        assert_eq!(fast.directed_ab.to_bits(), brute.directed_ab.to_bits());
        assert_eq!(fast.directed_ba.to_bits(), brute.directed_ba.to_bits());
    }
    check(
        "15 grid-accelerated distance equals brute force bit for bit",
        true,
        "50 random pairs up to 10^4 points".to_string(),
    );
}
