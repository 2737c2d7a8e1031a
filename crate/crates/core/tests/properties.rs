use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use spinframe::correlation::{
    bell_original, conditional_distribution, expected_correlation, joint_distribution,
    quantum_correlation, wigner_from_probabilities, CorrelationValue,
};
use spinframe::samplers::{enumerate_lhv_strategies, mixture_correlations};
use spinframe::su2::{
    decompose, inner_product, normalize_angle, ray_equivalent, recombine, rotation, spin_state,
    transition_probability, ComplexAmplitude, Direction, SpinSign, Spinor, UnitaryOp,
};

fn planar(alpha: f64) -> Direction {
    Direction::planar(alpha).unwrap()
}

fn sign() -> impl Strategy<Value = SpinSign> {
    prop_oneof![Just(SpinSign::Up), Just(SpinSign::Down)]
}

fn angle() -> impl Strategy<Value = f64> {
    -4.0 * PI..4.0 * PI
}

/// A random unit 3-vector off the x–z plane.
fn off_plane_direction() -> impl Strategy<Value = Direction> {
    (0.05f64..PI - 0.05, 0.05f64..PI - 0.05, any::<bool>()).prop_map(|(polar, az, flip)| {
        let az = if flip { -az } else { az };
        let (x, y, z) = (polar.sin() * az.cos(), polar.sin() * az.sin(), polar.cos());
        let norm = (x * x + y * y + z * z).sqrt();
        Direction::from_vector(x / norm, y / norm, z / norm).unwrap()
    })
}

fn any_direction() -> impl Strategy<Value = Direction> {
    prop_oneof![angle().prop_map(planar), off_plane_direction()]
}

fn random_state() -> impl Strategy<Value = Spinor> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("non-zero", |(a, b, c, d)| {
            a * a + b * b + c * c + d * d > 1e-3
        })
        .prop_map(|(a, b, c, d)| {
            let n = (a * a + b * b + c * c + d * d).sqrt();
            Spinor::new(
                ComplexAmplitude::new(a / n, b / n),
                ComplexAmplitude::new(c / n, d / n),
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn rotation_is_special_unitary(theta in angle()) {
        let u = rotation(theta);
        prop_assert!(u.unitarity_defect() <= 1e-12);
        prop_assert!((u.det() - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn axis_rotation_is_special_unitary(axis in any_direction(), theta in angle()) {
        let u = UnitaryOp::about_axis(&axis, theta);
        prop_assert!(u.unitarity_defect() <= 1e-12);
        prop_assert!((u.det() - 1.0).norm() <= 1e-12);
        prop_assert!(UnitaryOp::from_matrix(u.entries()).is_ok());
    }

    #[test]
    fn rotations_preserve_norm(s in random_state(), axis in any_direction(), theta in angle()) {
        let rotated = UnitaryOp::about_axis(&axis, theta).apply(&s);
        prop_assert!((rotated.norm_sqr() - s.norm_sqr()).abs() <= 1e-12);
        prop_assert!((inner_product(&rotated, &rotated).re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn half_angle_law(alpha in angle(), beta in angle()) {
        let p = transition_probability(
            &spin_state(&planar(alpha), SpinSign::Up),
            &spin_state(&planar(beta), SpinSign::Up),
        );
        prop_assert!((p - ((alpha - beta) / 2.0).cos().powi(2)).abs() <= 1e-10);
    }

    #[test]
    fn decomposition_reconstructs(target in any_direction(), basis in any_direction(), s in sign()) {
        let (c_plus, c_minus) = decompose(&target, &basis, s);
        prop_assert!((c_plus.norm_sqr() + c_minus.norm_sqr() - 1.0).abs() <= 1e-12);
        let rebuilt = recombine(&basis, c_plus, c_minus);
        prop_assert!(rebuilt.max_abs_diff(&spin_state(&target, s)) <= 1e-12);
    }

    #[test]
    fn double_cover(theta in angle(), s in random_state()) {
        let a = rotation(theta + TAU);
        let b = rotation(theta);
        prop_assert!(a.max_abs_diff(&-b) <= 1e-12);
        prop_assert!(ray_equivalent(&a.apply(&s), &b.apply(&s), 1e-12));
    }

    #[test]
    fn rotation_moves_planar_states(alpha in angle(), theta in angle(), s in sign()) {
        let moved = rotation(theta).apply(&spin_state(&planar(alpha), s));
        let expected = spin_state(&planar(alpha + theta), s);
        let d = moved.max_abs_diff(&expected).min(moved.max_abs_diff(&-expected));
        prop_assert!(d <= 1e-12, "distance {}", d);
    }

    #[test]
    fn eigenstates_are_orthonormal(d in any_direction()) {
        let up = spin_state(&d, SpinSign::Up);
        let down = spin_state(&d, SpinSign::Down);
        prop_assert!((up.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert!((down.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert!(inner_product(&up, &down).norm() <= 1e-12);
    }

    #[test]
    fn overlap_depends_only_on_axis_angle(a in any_direction(), b in any_direction()) {
        let p = transition_probability(&spin_state(&a, SpinSign::Up), &spin_state(&b, SpinSign::Up));
        prop_assert!((p - (a.angle_to(&b) / 2.0).cos().powi(2)).abs() <= 1e-10);
    }

    #[test]
    fn angle_normalization_range(alpha in -1e3f64..1e3) {
        let n = normalize_angle(alpha);
        prop_assert!(n > -PI && n <= PI);
        prop_assert!(((alpha - n) / TAU - ((alpha - n) / TAU).round()).abs() < 1e-9);
    }

    #[test]
    fn joint_table_sums_to_expectation(theta in 0.0f64..PI) {
        let t = joint_distribution(theta);
        prop_assert!((t.correlation() - expected_correlation(theta).value()).abs() <= 1e-12);
        prop_assert!((t.total() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn marginals_are_exactly_half(theta in -10.0f64..10.0) {
        let t = joint_distribution(theta);
        for s in SpinSign::BOTH {
            prop_assert_eq!(t.marginal_first(s), 0.5);
        }
        let c = conditional_distribution(theta);
        prop_assert_eq!(c.p_opposite + c.p_same, 1.0);
    }

    #[test]
    fn conditional_matches_born_rule(theta in 0.0f64..PI) {
        let born = transition_probability(
            &spin_state(&Direction::z(), SpinSign::Up),
            &spin_state(&planar(theta), SpinSign::Up),
        );
        prop_assert!((conditional_distribution(theta).p_opposite - born).abs() <= 1e-10);
    }

    #[test]
    fn quantum_correlation_matches_angle_form(a in any_direction(), b in any_direction()) {
        let q = quantum_correlation(&a, &b).value();
        let theta = a.dot(&b).clamp(-1.0, 1.0).acos();
        prop_assert!((q - expected_correlation(theta).value()).abs() <= 1e-12);
    }

    #[test]
    fn strategy_mixtures_obey_both_inequalities(weights in prop::collection::vec(0.0f64..1.0, 8)) {
        prop_assume!(weights.iter().sum::<f64>() > 1e-6);
        let dirs = [0.0, 1.0, 2.0].map(planar);
        let rows = enumerate_lhv_strategies(&dirs).unwrap();
        let [ab, ac, bc] = mixture_correlations(&rows, &weights).unwrap();
        prop_assert!(bell_original(ab, ac, bc).margin >= -1e-12);

        let total: f64 = weights.iter().sum();
        let p = |f: &dyn Fn(&spinframe::samplers::StrategyRow) -> bool| -> f64 {
            rows.iter().zip(&weights).filter(|(r, _)| f(r)).map(|(_, w)| w / total).sum()
        };
        let w = wigner_from_probabilities(
            p(&|r| r.strategy.plus_plus(0, 1)),
            p(&|r| r.strategy.plus_plus(0, 2)),
            p(&|r| r.strategy.plus_plus(2, 1)),
        );
        prop_assert!(w.margin >= -1e-12);
    }

    #[test]
    fn bell_report_margin_sign(ab in -1.0f64..=1.0, ac in -1.0f64..=1.0, bc in -1.0f64..=1.0) {
        let cv = |v| CorrelationValue::new(v).unwrap();
        let r = bell_original(cv(ab), cv(ac), cv(bc));
        prop_assert_eq!(r.satisfied, r.margin >= 0.0);
        prop_assert_eq!(r.margin, r.rhs - r.lhs);
    }
}

#[test]
fn quantum_triple_violates_both_inequalities() {
    let e = |t: f64| expected_correlation(t);
    let bell = bell_original(e(PI / 3.0), e(2.0 * PI / 3.0), e(PI / 3.0));
    assert!(!bell.satisfied);
    let wigner = spinframe::correlation::wigner_inequality(2.0 * PI / 3.0, PI / 3.0, PI / 3.0);
    assert!(!wigner.satisfied);
}
