use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use proptest::prelude::*;

use spinframe::correlation::{expected_correlation, joint_distribution};
use spinframe::samplers::{
    estimate_correlation, estimate_lhv_correlation, estimate_with, sweep_theta,
    CorrelationEstimate, MeasurementSettings, OutcomeCounts, PairModel, RngStream, SingletModel,
    CHUNK_TRIALS,
};
use spinframe::su2::{Direction, SpinSign};
use spinframe::verify::angle_grid;

/// Hidden-vector correlation by midpoint quadrature.
///
/// For a uniform hidden vector, the angle of its projection onto the plane
/// of the two analyzers is uniform, so
/// `E(θ) = −(1/2π) ∫ sign(cos φ) sign(cos(φ − θ)) dφ`.
fn hidden_vector_quadrature(theta: f64) -> f64 {
    let steps = 200_000;
    let h = 2.0 * PI / steps as f64;
    let sum: f64 = (0..steps)
        .map(|k| {
            let phi = (k as f64 + 0.5) * h;
            -(phi.cos().signum() * (phi - theta).cos().signum())
        })
        .sum();
    sum * h / (2.0 * PI)
}

#[test]
fn quadrature_oracle_is_linear_in_angle() {
    for theta in angle_grid(13) {
        let linear = -1.0 + 2.0 * theta / PI;
        assert!(
            (hidden_vector_quadrature(theta) - linear).abs() < 1e-4,
            "θ = {theta}"
        );
    }
}

#[test]
fn hidden_vector_model_matches_quadrature() {
    for (i, theta) in [FRAC_PI_4, FRAC_PI_2, 2.0].into_iter().enumerate() {
        let s = MeasurementSettings::planar(theta).unwrap();
        let est = estimate_lhv_correlation(&s, 1_000_000, &RngStream::new(31, i as u64)).unwrap();
        let oracle = hidden_vector_quadrature(theta);
        assert!(
            (est.mean - oracle).abs() <= 3.0 * est.std_error + 1e-4,
            "θ = {theta}: {} vs {oracle}",
            est.mean
        );
    }
}

#[test]
fn convergence_across_seeds() {
    // 3σ coverage is 99.73%, so across 100 seeds a single angle misses twice
    // about 3% of the time. Coverage is pooled over the grid; each angle may
    // miss at most 3 times (P(≥4 misses) ≈ 2e-4 per angle).
    let grid = angle_grid(13);
    let mut inside_total = 0;
    for (i, &theta) in grid.iter().enumerate() {
        let s = MeasurementSettings::planar(theta).unwrap();
        let inside = (0..100u64)
            .filter(|&seed| {
                let est =
                    estimate_correlation(&s, 100_000, &RngStream::new(seed, i as u64)).unwrap();
                (est.mean + theta.cos()).abs() <= 3.0 * est.std_error + 1e-12
            })
            .count();
        assert!(inside >= 97, "θ = {theta}: {inside}/100 inside 3σ");
        inside_total += inside;
    }
    let coverage = inside_total as f64 / (100 * grid.len()) as f64;
    assert!(coverage >= 0.99, "pooled coverage {coverage}");
}

#[test]
fn no_signaling_first_marginal() {
    let n = 400_000;
    let three_sigma = 3.0 * 0.5 / (n as f64).sqrt();
    for (i, theta) in [0.0, 0.4, FRAC_PI_3, FRAC_PI_2, 2.5, PI]
        .into_iter()
        .enumerate()
    {
        let s = MeasurementSettings::planar(theta).unwrap();
        let rng = RngStream::new(77, i as u64);
        for est in [
            estimate_correlation(&s, n, &rng).unwrap(),
            estimate_lhv_correlation(&s, n, &rng).unwrap(),
        ] {
            let up = est.first_marginal_up();
            assert!(
                (up - 0.5).abs() <= three_sigma,
                "θ = {theta}: P(λ₁=+) = {up}"
            );
        }
    }
}

#[test]
fn sampled_joint_law_matches_table_and_is_symmetric() {
    // Sampling λ₁ first must leave no trace: both orders give the same table.
    let theta = 1.2;
    let n = 1_000_000u64;
    let s = MeasurementSettings::planar(theta).unwrap();
    let est = estimate_correlation(&s, n, &RngStream::new(5, 0)).unwrap();
    let table = joint_distribution(theta);
    let cells = [
        (est.counts.plus_plus, SpinSign::Up, SpinSign::Up),
        (est.counts.plus_minus, SpinSign::Up, SpinSign::Down),
        (est.counts.minus_plus, SpinSign::Down, SpinSign::Up),
        (est.counts.minus_minus, SpinSign::Down, SpinSign::Down),
    ];
    let chi2: f64 = cells
        .iter()
        .map(|&(observed, l1, l2)| {
            let expected = table.get(l1, l2) * n as f64;
            (observed as f64 - expected).powi(2) / expected
        })
        .sum();
    // χ² with 3 dof: 99.9th percentile is 16.27.
    assert!(chi2 < 16.27, "χ² = {chi2}");

    let swap_sigma = |a: u64, b: u64| (a as f64 - b as f64).abs() / ((a + b) as f64).sqrt();
    assert!(swap_sigma(est.counts.plus_minus, est.counts.minus_plus) < 4.0);
    assert!(swap_sigma(est.counts.plus_plus, est.counts.minus_minus) < 4.0);
}

#[test]
fn degenerate_angles_are_exact() {
    let n = 2_000_000;
    let aligned = estimate_correlation(
        &MeasurementSettings::planar(0.0).unwrap(),
        n,
        &RngStream::new(1, 0),
    )
    .unwrap();
    assert_eq!(aligned.counts.plus_plus + aligned.counts.minus_minus, 0);
    let opposed = estimate_correlation(
        &MeasurementSettings::planar(PI).unwrap(),
        n,
        &RngStream::new(1, 1),
    )
    .unwrap();
    assert_eq!(opposed.counts.plus_minus + opposed.counts.minus_plus, 0);
    assert_eq!(opposed.mean, 1.0);
}

#[test]
fn streamed_mean_equals_count_mean() {
    let model = SingletModel::at_angle(0.9);
    let n = CHUNK_TRIALS * 2 + 101;
    let root = RngStream::new(64, 2);

    // Sequential replay of the chunk layout with a running product sum.
    let mut sum = 0i64;
    let mut chunk = 0;
    let mut remaining = n;
    while remaining > 0 {
        let len = remaining.min(CHUNK_TRIALS);
        let mut stream = root.split(chunk);
        for _ in 0..len {
            sum += i64::from(model.sample(&mut stream).product().value());
        }
        remaining -= len;
        chunk += 1;
    }
    let est = estimate_with(&model, n, &root).unwrap();
    assert_eq!(est.counts.product_sum(), sum);
    assert_eq!(est.mean, sum as f64 / n as f64);
}

#[test]
fn sweep_rows_separate_models_at_quarter_turn() {
    let rows = sweep_theta(&[FRAC_PI_4], 1_000_000, 2024).unwrap();
    let r = rows[0];
    assert!((r.analytic + FRAC_PI_4.cos()).abs() < 1e-12);
    assert!((r.mc_mean - r.analytic).abs() <= 3.0 * r.mc_std_error);
    assert!((r.lhv_mean + 0.5).abs() <= 3.0 * r.lhv_std_error);
    assert!(((r.lhv_mean - r.mc_mean) - 0.2071).abs() < 0.01);
}

#[test]
fn sweep_at_right_angle() {
    let r = sweep_theta(&[FRAC_PI_2], 1_000_000, 3).unwrap()[0];
    assert!(r.analytic.abs() < 1e-12);
    assert!(r.mc_mean.abs() <= 3.0 * r.mc_std_error);
    assert!(r.lhv_mean.abs() <= 3.0 * r.lhv_std_error);
}

#[test]
fn off_plane_settings_use_axis_angle() {
    let a = Direction::from_vector(0.0, 1.0, 0.0).unwrap();
    let b = Direction::from_vector(0.6, 0.8, 0.0).unwrap();
    let s = MeasurementSettings::new(a, b);
    let est = estimate_correlation(&s, 500_000, &RngStream::new(12, 0)).unwrap();
    let expected = expected_correlation(0.8f64.acos()).value();
    assert!((est.mean - expected).abs() <= 3.0 * est.std_error);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn same_key_same_counts(seed in any::<u64>(), index in any::<u64>(), n in 1u64..200_000, theta in 0.0f64..PI) {
        let s = MeasurementSettings::planar(theta).unwrap();
        let a = estimate_correlation(&s, n, &RngStream::new(seed, index)).unwrap();
        let b = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap()
            .install(|| estimate_correlation(&s, n, &RngStream::new(seed, index)).unwrap());
        prop_assert_eq!(a, b);
        prop_assert_eq!(a.counts.total(), n);
        prop_assert!(a.mean.abs() <= 1.0);
    }

    #[test]
    fn estimate_algebra(pp in 0u64..1000, pm in 0u64..1000, mp in 0u64..1000, mm in 0u64..1000) {
        let counts = OutcomeCounts { plus_plus: pp, plus_minus: pm, minus_plus: mp, minus_minus: mm };
        prop_assume!(counts.total() > 0);
        let est = CorrelationEstimate::from_counts(counts).unwrap();
        let n = counts.total() as f64;
        prop_assert_eq!(est.mean, ((pp + mm) as f64 - (pm + mp) as f64) / n);
        prop_assert!((est.std_error - ((1.0 - est.mean * est.mean) / n).sqrt()).abs() < 1e-15);
    }
}
