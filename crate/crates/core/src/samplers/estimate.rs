use std::ops::{Add, AddAssign};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::models::{HiddenVectorModel, PairModel, SingletModel};
use super::{MeasurementSettings, RngStream, TrialOutcome};
use crate::error::{Error, Result};
use crate::su2::SpinSign;

/// Trials per work chunk. Part of the stream layout: changing it changes results.
pub const CHUNK_TRIALS: u64 = 1 << 16;

/// Tally of outcomes by `(λ₁, λ₂)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub plus_plus: u64,
    pub plus_minus: u64,
    pub minus_plus: u64,
    pub minus_minus: u64,
}

impl OutcomeCounts {
    pub fn record(&mut self, outcome: TrialOutcome) {
        let cell = match (outcome.lambda1, outcome.lambda2) {
            (SpinSign::Up, SpinSign::Up) => &mut self.plus_plus,
            (SpinSign::Up, SpinSign::Down) => &mut self.plus_minus,
            (SpinSign::Down, SpinSign::Up) => &mut self.minus_plus,
            (SpinSign::Down, SpinSign::Down) => &mut self.minus_minus,
        };
        *cell += 1;
    }

    pub fn total(&self) -> u64 {
        self.plus_plus + self.plus_minus + self.minus_plus + self.minus_minus
    }

    /// `Σ λ₁λ₂` over all recorded trials.
    pub fn product_sum(&self) -> i64 {
        (self.plus_plus + self.minus_minus) as i64 - (self.plus_minus + self.minus_plus) as i64
    }

    pub fn first_up(&self) -> u64 {
        self.plus_plus + self.plus_minus
    }
}

impl Add for OutcomeCounts {
    type Output = OutcomeCounts;

    fn add(self, rhs: OutcomeCounts) -> OutcomeCounts {
        OutcomeCounts {
            plus_plus: self.plus_plus + rhs.plus_plus,
            plus_minus: self.plus_minus + rhs.plus_minus,
            minus_plus: self.minus_plus + rhs.minus_plus,
            minus_minus: self.minus_minus + rhs.minus_minus,
        }
    }
}

impl AddAssign for OutcomeCounts {
    fn add_assign(&mut self, rhs: OutcomeCounts) {
        *self = *self + rhs;
    }
}

/// Empirical `E(λ₁λ₂)` with its plug-in standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_trials: u64,
    pub counts: OutcomeCounts,
}

impl CorrelationEstimate {
    pub fn from_counts(counts: OutcomeCounts) -> Result<CorrelationEstimate> {
        let n_trials = counts.total();
        if n_trials == 0 {
            return Err(Error::ZeroTrials);
        }
        let n = n_trials as f64;
        let mean = counts.product_sum() as f64 / n;
        let std_error = ((1.0 - mean * mean).max(0.0) / n).sqrt();
        Ok(CorrelationEstimate {
            mean,
            std_error,
            n_trials,
            counts,
        })
    }

    /// Fraction of trials with `λ₁ = λ₂ = +1`.
    pub fn p_plus_plus(&self) -> f64 {
        self.counts.plus_plus as f64 / self.n_trials as f64
    }

    /// Binomial standard error of [`Self::p_plus_plus`].
    pub fn p_plus_plus_std_error(&self) -> f64 {
        let p = self.p_plus_plus();
        (p * (1.0 - p) / self.n_trials as f64).sqrt()
    }

    /// Fraction of trials with `λ₁ = +1`.
    pub fn first_marginal_up(&self) -> f64 {
        self.counts.first_up() as f64 / self.n_trials as f64
    }

    /// `(mean − expected) / std_error`; infinite when the error is zero and the mean is off.
    pub fn z_score(&self, expected: f64) -> f64 {
        let diff = self.mean - expected;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Runs `n` trials of `model` on the chunk layout rooted at `rng`.
///
/// Uses the ambient rayon pool; the result is identical for any pool size.
pub fn estimate_with<M: PairModel>(
    model: &M,
    n: u64,
    rng: &RngStream,
) -> Result<CorrelationEstimate> {
    if n == 0 {
        return Err(Error::ZeroTrials);
    }
    let chunks = n.div_ceil(CHUNK_TRIALS);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let len = CHUNK_TRIALS.min(n - chunk * CHUNK_TRIALS);
            let mut stream = rng.split(chunk);
            let mut counts = OutcomeCounts::default();
            for _ in 0..len {
                counts.record(model.sample(&mut stream));
            }
            counts
        })
        .reduce(OutcomeCounts::default, Add::add);
    CorrelationEstimate::from_counts(counts)
}

pub fn estimate_correlation(
    settings: &MeasurementSettings,
    n: u64,
    rng: &RngStream,
) -> Result<CorrelationEstimate> {
    estimate_with(&SingletModel::new(settings), n, rng)
}

pub fn estimate_lhv_correlation(
    settings: &MeasurementSettings,
    n: u64,
    rng: &RngStream,
) -> Result<CorrelationEstimate> {
    estimate_with(&HiddenVectorModel::new(settings), n, rng)
}
