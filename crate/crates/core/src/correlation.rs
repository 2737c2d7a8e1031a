//! Closed-form singlet statistics and the Bell/Wigner inequality evaluators.
//!
//! The singlet law is written as a first-particle marginal times a
//! conditional: `P(λ₁, λ₂) = P(λ₁) · P(λ₂ | λ₁)` with `P(λ₁) = 1/2` and
//! `P(λ₂ = −λ₁ | λ₁) = cos²(θ/2)`. Everything in the Monte Carlo layer is
//! checked against the tables produced here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{Direction, SpinSign};

/// `P(λ₂ | λ₁)` at relative angle `theta`, split into the opposite-sign and same-sign cases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalTable {
    pub p_opposite: f64,
    pub p_same: f64,
    pub theta: f64,
}

impl ConditionalTable {
    pub fn given(&self, lambda1: SpinSign, lambda2: SpinSign) -> f64 {
        if lambda1 == lambda2 {
            self.p_same
        } else {
            self.p_opposite
        }
    }
}

/// `P(λ₁, λ₂)` over the four sign pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    pub plus_plus: f64,
    pub plus_minus: f64,
    pub minus_plus: f64,
    pub minus_minus: f64,
}

impl JointTable {
    pub fn get(&self, lambda1: SpinSign, lambda2: SpinSign) -> f64 {
        match (lambda1, lambda2) {
            (SpinSign::Up, SpinSign::Up) => self.plus_plus,
            (SpinSign::Up, SpinSign::Down) => self.plus_minus,
            (SpinSign::Down, SpinSign::Up) => self.minus_plus,
            (SpinSign::Down, SpinSign::Down) => self.minus_minus,
        }
    }

    pub fn total(&self) -> f64 {
        self.plus_plus + self.plus_minus + self.minus_plus + self.minus_minus
    }

    pub fn marginal_first(&self, lambda1: SpinSign) -> f64 {
        self.get(lambda1, SpinSign::Up) + self.get(lambda1, SpinSign::Down)
    }

    pub fn marginal_second(&self, lambda2: SpinSign) -> f64 {
        self.get(SpinSign::Up, lambda2) + self.get(SpinSign::Down, lambda2)
    }

    /// `Σ λ₁λ₂ P(λ₁, λ₂)`.
    pub fn correlation(&self) -> f64 {
        self.plus_plus + self.minus_minus - self.plus_minus - self.minus_plus
    }
}

/// An expectation `E(λ₁λ₂)`, always in `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorrelationValue(f64);

impl CorrelationValue {
    pub fn new(value: f64) -> Result<CorrelationValue> {
        if value.is_finite() && value.abs() <= 1.0 {
            Ok(CorrelationValue(value))
        } else {
            Err(Error::CorrelationOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Outcome of checking `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; negative when the inequality is violated.
    pub margin: f64,
    pub satisfied: bool,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64) -> InequalityReport {
        let margin = rhs - lhs;
        InequalityReport {
            lhs,
            rhs,
            margin,
            satisfied: margin >= 0.0,
        }
    }

    /// `lhs − rhs`; positive when violated.
    pub fn violation(&self) -> f64 {
        -self.margin
    }
}

pub fn conditional_distribution(theta: f64) -> ConditionalTable {
    let c = (theta / 2.0).cos();
    let p_opposite = c * c;
    ConditionalTable {
        p_opposite,
        // Complement rather than sin² keeps each row summing to exactly 1.
        p_same: 1.0 - p_opposite,
        theta,
    }
}

pub fn joint_distribution(theta: f64) -> JointTable {
    let cond = conditional_distribution(theta);
    let cell = |l1: SpinSign, l2: SpinSign| 0.5 * cond.given(l1, l2);
    JointTable {
        plus_plus: cell(SpinSign::Up, SpinSign::Up),
        plus_minus: cell(SpinSign::Up, SpinSign::Down),
        minus_plus: cell(SpinSign::Down, SpinSign::Up),
        minus_minus: cell(SpinSign::Down, SpinSign::Down),
    }
}

/// `E = −cos²(θ/2) + sin²(θ/2) = −cos θ`.
pub fn expected_correlation(theta: f64) -> CorrelationValue {
    CorrelationValue(-theta.cos())
}

/// `E = −nᵢ·nⱼ`.
pub fn quantum_correlation(ni: &Direction, nj: &Direction) -> CorrelationValue {
    CorrelationValue(-ni.dot(nj).clamp(-1.0, 1.0))
}

/// Bell's original form `|E(a,b) − E(a,c)| ≤ 1 + E(b,c)`.
pub fn bell_original(
    e_ab: CorrelationValue,
    e_ac: CorrelationValue,
    e_bc: CorrelationValue,
) -> InequalityReport {
    InequalityReport::new((e_ab.0 - e_ac.0).abs(), 1.0 + e_bc.0)
}

/// Wigner's form `P(+,+|a,b) ≤ P(+,+|a,c) + P(+,+|c,b)` for given
/// same-sign probabilities.
pub fn wigner_from_probabilities(p_ab: f64, p_ac: f64, p_cb: f64) -> InequalityReport {
    InequalityReport::new(p_ab, p_ac + p_cb)
}

/// Wigner's inequality with the singlet value `P(+,+|θ) = ½ sin²(θ/2)`.
pub fn wigner_inequality(theta_ab: f64, theta_ac: f64, theta_cb: f64) -> InequalityReport {
    let pp = |theta: f64| joint_distribution(theta).plus_plus;
    wigner_from_probabilities(pp(theta_ab), pp(theta_ac), pp(theta_cb))
}
