//! Exact-value checks on the quarter-turn construction and the singlet identities.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::correlation::{
    bell_original, conditional_distribution, expected_correlation, joint_distribution,
    wigner_inequality,
};
use crate::samplers::enumerate_lhv_strategies;
use crate::su2::{
    decompose, inner_product, ray_equivalent, rotation, spin_state, transition_probability,
    Direction, SpinSign, Spinor,
};

/// Tolerance for values algebraic in `1/√2`.
pub const VECTOR_TOL: f64 = 1e-15;
/// Tolerance for identities checked through transcendental evaluation.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn within(name: &str, error: f64, tol: f64) -> Check {
        Check {
            name: name.to_string(),
            passed: error <= tol,
            detail: format!("max error {error:.3e} (tol {tol:.0e})"),
        }
    }

    fn holds(name: &str, passed: bool, detail: String) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// `n` evenly spaced angles covering `[0, π]`.
pub fn angle_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| PI * i as f64 / (n - 1) as f64).collect()
}

fn planar(alpha: f64) -> Direction {
    Direction::planar(alpha).expect("finite angle")
}

fn vector_error(s: &Spinor, up: f64, down: f64) -> f64 {
    s.max_abs_diff(&Spinor::from_real(up, down).expect("normalized"))
}

/// Runs every check. Order is stable.
pub fn exact_checks() -> Vec<Check> {
    let r = FRAC_1_SQRT_2;
    let n1 = Direction::z();
    let n2 = planar(FRAC_PI_2);
    let n3 = planar(-FRAC_PI_2);
    let n1_plus = spin_state(&n1, SpinSign::Up);
    let n2_plus = spin_state(&n2, SpinSign::Up);
    let n2_minus = spin_state(&n2, SpinSign::Down);
    let n3_plus = spin_state(&n3, SpinSign::Up);
    let n3_minus = spin_state(&n3, SpinSign::Down);

    let mut checks = vec![
        Check::within(
            "n1_plus = (1, 0)",
            vector_error(&n1_plus, 1.0, 0.0),
            VECTOR_TOL,
        ),
        Check::within(
            "n2_plus = (1/√2, 1/√2)",
            vector_error(&n2_plus, r, r),
            VECTOR_TOL,
        ),
        Check::within(
            "n2_minus = (1/√2, -1/√2)",
            vector_error(&n2_minus, r, -r),
            VECTOR_TOL,
        ),
        Check::within(
            "n3_plus = (1/√2, -1/√2)",
            vector_error(&n3_plus, r, -r),
            VECTOR_TOL,
        ),
        Check::within(
            "n3_minus = (-1/√2, -1/√2)",
            vector_error(&n3_minus, -r, -r),
            VECTOR_TOL,
        ),
    ];

    let flipped = rotation(2.0 * PI).apply(&n1_plus);
    checks.push(Check::holds(
        "(1, 0) and (-1, 0) are the same ray",
        vector_error(&flipped, -1.0, 0.0) <= VECTOR_TOL
            && ray_equivalent(&n1_plus, &flipped, IDENTITY_TOL),
        "rotation(2π)·(1, 0) = (-1, 0), |⟨a|b⟩| = 1".to_string(),
    ));

    checks.push(Check::within(
        "n2_plus orthogonal to n3_plus",
        inner_product(&n2_plus, &n3_plus).norm(),
        IDENTITY_TOL,
    ));
    checks.push(Check::within(
        "n2_minus orthogonal to n3_minus",
        inner_product(&n2_minus, &n3_minus).norm(),
        IDENTITY_TOL,
    ));
    checks.push(Check::within(
        "n2_minus equals n3_plus",
        n2_minus.max_abs_diff(&n3_plus),
        VECTOR_TOL,
    ));

    let (p, m) = decompose(&n1, &n2, SpinSign::Up);
    checks.push(Check::within(
        "n1_plus = (1/√2) n2_plus + (1/√2) n2_minus",
        (p.re - r)
            .abs()
            .max((m.re - r).abs())
            .max(p.im.abs())
            .max(m.im.abs()),
        VECTOR_TOL,
    ));
    let (p, m) = decompose(&n1, &n3, SpinSign::Up);
    checks.push(Check::within(
        "n1_plus = (1/√2) n3_plus - (1/√2) n3_minus",
        (p.re - r)
            .abs()
            .max((m.re + r).abs())
            .max(p.im.abs())
            .max(m.im.abs()),
        VECTOR_TOL,
    ));

    let grid = angle_grid(13);
    let worst = |f: &dyn Fn(f64) -> f64| grid.iter().map(|&t| f(t)).fold(0.0, f64::max);

    checks.push(Check::within(
        "rotation(θ) is special unitary on 13-point grid",
        worst(&|t| {
            let u = rotation(t);
            u.unitarity_defect().max((u.det() - 1.0).norm())
        }),
        IDENTITY_TOL,
    ));
    checks.push(Check::within(
        "E(θ) = −cos θ on 13-point grid",
        worst(&|t| {
            let e = expected_correlation(t).value();
            (e + t.cos())
                .abs()
                .max((joint_distribution(t).correlation() - e).abs())
        }),
        IDENTITY_TOL,
    ));
    checks.push(Check::within(
        "joint marginals are (1/2, 1/2) on 13-point grid",
        worst(&|t| {
            let j = joint_distribution(t);
            SpinSign::BOTH
                .iter()
                .map(|&s| {
                    (j.marginal_first(s) - 0.5)
                        .abs()
                        .max((j.marginal_second(s) - 0.5).abs())
                })
                .fold((j.total() - 1.0).abs(), f64::max)
        }),
        IDENTITY_TOL,
    ));
    checks.push(Check::within(
        "P(λ₂ = −λ₁) equals Born probability on 13-point grid",
        worst(&|t| {
            let born = transition_probability(&n1_plus, &spin_state(&planar(t), SpinSign::Up));
            (conditional_distribution(t).p_opposite - born).abs()
        }),
        1e-10,
    ));

    let e = |t: f64| expected_correlation(t);
    let bell = bell_original(e(FRAC_PI_3), e(2.0 * FRAC_PI_3), e(FRAC_PI_3));
    checks.push(Check::holds(
        "Bell inequality violated at (0, π/3, 2π/3)",
        !bell.satisfied && (bell.violation() - 0.5).abs() <= IDENTITY_TOL,
        format!("lhs {:.6} > rhs {:.6}", bell.lhs, bell.rhs),
    ));
    let wigner = wigner_inequality(2.0 * FRAC_PI_3, FRAC_PI_3, FRAC_PI_3);
    checks.push(Check::holds(
        "Wigner inequality violated at (2π/3, π/3, π/3)",
        !wigner.satisfied
            && (wigner.lhs - 0.375).abs() <= IDENTITY_TOL
            && (wigner.rhs - 0.25).abs() <= IDENTITY_TOL,
        format!("lhs {:.6} > rhs {:.6}", wigner.lhs, wigner.rhs),
    ));

    let triple = [0.0, FRAC_PI_3, 2.0 * FRAC_PI_3].map(planar);
    let rows = enumerate_lhv_strategies(&triple).expect("distinct directions");
    let ok = rows
        .iter()
        .filter(|row| row.bell().satisfied && row.wigner().satisfied)
        .count();
    checks.push(Check::holds(
        "all 8 local strategies satisfy Bell and Wigner",
        rows.len() == 8 && ok == 8,
        format!("{ok}/{} strategies satisfy both", rows.len()),
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for check in exact_checks() {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn named_checks_present() {
        let names: Vec<String> = exact_checks().into_iter().map(|c| c.name).collect();
        assert!(names.iter().any(|n| n == "n2_minus equals n3_plus"));
        assert!(names.iter().any(|n| n == "E(θ) = −cos θ on 13-point grid"));
    }

    #[test]
    fn grid_endpoints() {
        let g = angle_grid(13);
        assert_eq!(g.len(), 13);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[12], PI);
    }
}
