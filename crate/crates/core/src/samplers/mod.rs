//! Seeded Monte Carlo engines: the conditional-probability singlet sampler,
//! the hidden-vector local model, exhaustive deterministic strategies, and
//! the sealed-envelope demonstration.
//!
//! Trials are split into fixed-size chunks. Each chunk draws from its own
//! [`RngStream`] derived from `(master_seed, stream_index, chunk)` and
//! returns integer outcome counts, which are summed. Results therefore do
//! not depend on the number of worker threads.

mod envelope;
mod estimate;
mod lhv;
mod models;
mod rng;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::su2::{Direction, SpinSign};

pub use envelope::{envelope_demo, Card, EnvelopeState, EnvelopeTranscript};
pub use estimate::{
    estimate_correlation, estimate_lhv_correlation, estimate_with, CorrelationEstimate,
    OutcomeCounts, CHUNK_TRIALS,
};
pub use lhv::{
    enumerate_lhv_strategies, estimate_lhv_triple, mixture_correlations, LhvStrategy,
    LhvTripleEstimate, StrategyRow,
};
pub use models::{
    sample_lhv_vector_model, sample_singlet_pair, HiddenVectorModel, PairModel, SingletModel,
};
pub use rng::{RngStream, GENERATOR_ID};
pub use sweep::{sweep_theta, SweepRow};

/// One measured pair `(λ₁, λ₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub lambda1: SpinSign,
    pub lambda2: SpinSign,
}

impl TrialOutcome {
    pub fn product(&self) -> SpinSign {
        self.lambda1 * self.lambda2
    }
}

/// Analyzer axes for particle 1 and particle 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSettings {
    pub dir1: Direction,
    pub dir2: Direction,
}

impl MeasurementSettings {
    pub fn new(dir1: Direction, dir2: Direction) -> MeasurementSettings {
        MeasurementSettings { dir1, dir2 }
    }

    /// Particle 1 along the reference axis, particle 2 tilted by `theta` in the plane.
    pub fn planar(theta: f64) -> crate::Result<MeasurementSettings> {
        Ok(MeasurementSettings {
            dir1: Direction::z(),
            dir2: Direction::planar(theta)?,
        })
    }

    pub fn angle(&self) -> f64 {
        self.dir1.angle_to(&self.dir2)
    }
}
