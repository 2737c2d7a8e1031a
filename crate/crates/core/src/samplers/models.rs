use rand_distr::{Distribution, UnitSphere};

use super::{MeasurementSettings, RngStream, TrialOutcome};
use crate::correlation::conditional_distribution;
use crate::su2::SpinSign;

/// Something that produces one measured pair per call.
pub trait PairModel: Sync {
    fn sample(&self, rng: &mut RngStream) -> TrialOutcome;
}

/// Sequential singlet sampler: `λ₁` from the uniform marginal, then `λ₂`
/// from `P(λ₂ | λ₁)`.
#[derive(Debug, Clone, Copy)]
pub struct SingletModel {
    p_opposite: f64,
}

impl SingletModel {
    pub fn new(settings: &MeasurementSettings) -> SingletModel {
        SingletModel::at_angle(settings.angle())
    }

    pub fn at_angle(theta: f64) -> SingletModel {
        SingletModel {
            p_opposite: conditional_distribution(theta).p_opposite,
        }
    }
}

impl PairModel for SingletModel {
    fn sample(&self, rng: &mut RngStream) -> TrialOutcome {
        let lambda1 = SpinSign::from_up(rng.coin());
        let lambda2 = if rng.open_unit() < self.p_opposite {
            -lambda1
        } else {
            lambda1
        };
        TrialOutcome { lambda1, lambda2 }
    }
}

/// Local model with a shared hidden unit vector `h`:
/// `λ₁ = sign(h·a)`, `λ₂ = −sign(h·b)`.
#[derive(Debug, Clone, Copy)]
pub struct HiddenVectorModel {
    a: [f64; 3],
    b: [f64; 3],
}

impl HiddenVectorModel {
    pub fn new(settings: &MeasurementSettings) -> HiddenVectorModel {
        HiddenVectorModel {
            a: settings.dir1.unit_vector(),
            b: settings.dir2.unit_vector(),
        }
    }
}

fn dot(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Draws a hidden vector and returns the sign of its projection on each axis.
/// A draw with any projection exactly zero is discarded.
pub(super) fn hidden_signs<const N: usize>(
    axes: &[[f64; 3]; N],
    rng: &mut RngStream,
) -> [SpinSign; N] {
    loop {
        let h: [f64; 3] = UnitSphere.sample(rng);
        let projections = axes.map(|axis| dot(&h, &axis));
        if projections.iter().all(|&p| p != 0.0) {
            return projections.map(|p| SpinSign::from_up(p > 0.0));
        }
    }
}

impl PairModel for HiddenVectorModel {
    fn sample(&self, rng: &mut RngStream) -> TrialOutcome {
        let [s1, s2] = hidden_signs(&[self.a, self.b], rng);
        TrialOutcome {
            lambda1: s1,
            lambda2: -s2,
        }
    }
}

pub fn sample_singlet_pair(settings: &MeasurementSettings, rng: &mut RngStream) -> TrialOutcome {
    SingletModel::new(settings).sample(rng)
}

pub fn sample_lhv_vector_model(
    settings: &MeasurementSettings,
    rng: &mut RngStream,
) -> TrialOutcome {
    HiddenVectorModel::new(settings).sample(rng)
}
