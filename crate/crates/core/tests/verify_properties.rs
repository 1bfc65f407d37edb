use std::f64::consts::TAU;

use delta_apoints::apoints::{count_contour, enumerate, TargetValue};
use delta_apoints::complexfn::delta;
use delta_apoints::tolerances::*;
use delta_apoints::verify::{
    blocks_decrease, clustering_report, conjugate_points, curve_sigma, empirical_sum, mean_zeta,
    mean_zeta_from_points, n_main, reflected_mean, reflected_mean_from_points, sum_main,
    sum_report_from_points, PipelineConfig,
};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn target(re: f64, im: f64) -> TargetValue {
    TargetValue::from_parts(re, im).unwrap()
}

#[test]
fn main_term_identity_at_eta_zero() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let a = Complex64::from_polar(rng.random_range(0.05..20.0), rng.random_range(-3.1..3.1));
        let a = TargetValue::new(a).unwrap();
        let t = rng.random_range(50.0..1e5);
        let lhs = sum_main(&a, 0.0, t).unwrap();
        let rhs = (1.0 + a.value) * n_main(t).unwrap();
        assert!(
            (lhs - rhs).norm() <= MAIN_TERM_IDENTITY_TOL * rhs.norm(),
            "{lhs} vs {rhs}"
        );
    }
}

#[test]
fn count_tracks_main_term() {
    for a in [target(1.0, 0.0), target(0.0, 1.0), target(2.0, 0.0)] {
        let cfg = PipelineConfig::for_target(&a);
        let points = enumerate(&a, 1e4, &cfg.solver).unwrap();
        for t in [500.0, 1000.0, 2500.0, 5000.0, 1e4] {
            let count = points.iter().filter(|p| p.gamma() <= t).count() as f64;
            let main = n_main(t).unwrap();
            assert!(
                (count - main).abs() <= COUNT_LOG_FACTOR * t.ln(),
                "a = {}, T = {t}: {count} vs {main}",
                a.value
            );
        }
    }
}

#[test]
fn normalized_error_does_not_blow_up() {
    for (a, eta) in [
        (target(1.0, 0.0), 0.0),
        (target(0.0, 1.0), 0.3),
        (target(2.0, 0.0), 0.5),
    ] {
        let cfg = PipelineConfig::for_target(&a);
        let points = enumerate(&a, 5000.0, &cfg.solver).unwrap();
        let report = |t: f64| {
            let below: Vec<_> = points.iter().copied().filter(|p| p.gamma() <= t).collect();
            sum_report_from_points(&a, eta, t, &below, &cfg).unwrap()
        };
        let base = report(500.0).normalized_error;
        for t in [1000.0, 2000.0, 3500.0, 5000.0] {
            let r = report(t);
            assert!(
                r.normalized_error <= NORMALIZED_ERROR_GROWTH * base,
                "a = {}, eta = {eta}, T = {t}: {} vs base {base}",
                a.value,
                r.normalized_error
            );
        }
    }
}

#[test]
fn conjugate_points_reflect_the_sum() {
    let a = target(0.6, 1.3);
    let cfg = PipelineConfig::for_target(&a);
    let points = enumerate(&a, 800.0, &cfg.solver).unwrap();
    let mirrored = conjugate_points(&points);
    for p in &mirrored {
        let r = (delta(p.location).unwrap() - a.value.conj()).norm();
        assert!(r <= 1e-9, "{p:?}");
    }
    let m = mean_zeta_from_points(&points, &cfg.zeta).unwrap();
    let n = mean_zeta_from_points(&mirrored, &cfg.zeta).unwrap();
    assert!((n - m.conj()).norm() <= 1e-9, "{m} vs {n}");
}

#[test]
fn means_approach_one_plus_a() {
    for a in [target(1.0, 0.0), target(-1.0, 0.0)] {
        let cfg = PipelineConfig::for_target(&a);
        let m = mean_zeta(&a, 5000.0, &cfg).unwrap();
        assert!(
            (m - a.value - 1.0).norm() <= MEAN_TOL,
            "a = {}: {m}",
            a.value
        );
    }
}

#[test]
fn mean_error_sequence_is_non_increasing() {
    for a in [target(1.0, 0.0), target(-1.0, 0.0)] {
        let cfg = PipelineConfig::for_target(&a);
        let expected = a.value + 1.0;
        let errors: Vec<f64> = [500.0, 1500.0, 5000.0]
            .iter()
            .map(|&t| (mean_zeta(&a, t, &cfg).unwrap() - expected).norm())
            .collect();
        for w in errors.windows(2) {
            assert!(
                w[1] <= MEAN_TREND_SLACK * w[0],
                "a = {}: {errors:?}",
                a.value
            );
        }
    }
}

#[test]
fn reflected_means() {
    let two = target(2.0, 0.0);
    let cfg = PipelineConfig::for_target(&two);
    let m = reflected_mean(&two, 5000.0, &cfg).unwrap();
    assert!((m - 1.5).norm() <= REFLECTED_MEAN_TOL, "{m}");

    let one = target(1.0, 0.0);
    let cfg = PipelineConfig::for_target(&one);
    let points = enumerate(&one, 5000.0, &cfg.solver).unwrap();
    let direct = mean_zeta_from_points(&points, &cfg.zeta).unwrap();
    let reflected = reflected_mean_from_points(&points, &cfg.zeta).unwrap();
    assert!(
        (direct - reflected).norm() <= 0.05,
        "{direct} vs {reflected}"
    );

    let i = target(0.0, 1.0);
    let cfg = PipelineConfig::for_target(&i);
    let m = reflected_mean(&i, 5000.0, &cfg).unwrap();
    assert!(
        (m - Complex64::new(1.0, -1.0)).norm() <= REFLECTED_MEAN_TOL_IMAGINARY,
        "{m}"
    );
}

#[test]
fn points_follow_the_curve() {
    for a in [target(2.0, 0.0), target(0.2, 0.0), target(-7.0, 1.0)] {
        let cfg = PipelineConfig::for_target(&a);
        for p in enumerate(&a, 3000.0, &cfg.solver).unwrap() {
            if p.gamma() <= CURVE_CHECK_MIN_T {
                continue;
            }
            let c = curve_sigma(a.modulus(), p.gamma()).unwrap();
            assert!(
                (p.beta() - c.sigma).abs() <= CURVE_DEVIATION_TOL,
                "a = {}, {p:?}",
                a.value
            );
        }
    }
}

#[test]
fn clustering_blocks_shrink() {
    for a in [target(2.0, 0.0), target(0.5, 0.5), target(-3.0, 0.0)] {
        let cfg = PipelineConfig::for_target(&a);
        let blocks = clustering_report(&a, 4000.0, &cfg).unwrap();
        assert!(blocks.len() >= 3);
        assert!(blocks.iter().all(|b| b.count > 0));
        assert!(
            blocks_decrease(&blocks, BLOCK_DECREASE_SLACK),
            "a = {}: {blocks:?}",
            a.value
        );
        for b in &blocks {
            let bound = a.log_modulus.abs() / (b.lo / TAU).ln() + CLUSTER_EXTRA;
            assert!(b.max_dev <= bound, "{b:?}");
        }
    }
    let cfg = PipelineConfig::for_target(&target(2.0, 0.0));
    assert!(clustering_report(&target(2.0, 0.0), 3.0 * cfg.solver.t_min, &cfg).is_err());
}

#[test]
fn imaginary_target_mean() {
    let a = target(0.0, 1.0);
    let cfg = PipelineConfig::for_target(&a);
    let r = empirical_sum(&a, 0.0, 3000.0, &cfg).unwrap();
    assert!(
        (r.mean() - Complex64::new(1.0, 1.0)).norm() <= MEAN_TOL,
        "{}",
        r.mean()
    );
    assert_eq!(
        r.count,
        count_contour(&a, cfg.solver.t_min, 3000.0).unwrap()
    );
}
