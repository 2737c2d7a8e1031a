//! Deterministic outcome assignments over three analyzer directions.
//!
//! A strategy fixes particle 1's outcome for each of the labels `a`, `b`,
//! `c`; particle 2 always gets the opposite sign on the same label. With
//! three labels there are exactly eight strategies, and any local model is
//! a probability mixture of them. The hidden-vector model realizes one
//! strategy per draw, so its triple estimate is kept as strategy counts and
//! every statistic is computed in integer arithmetic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::models::hidden_signs;
use super::{RngStream, CHUNK_TRIALS};
use crate::correlation::{
    bell_original, wigner_from_probabilities, CorrelationValue, InequalityReport,
};
use crate::error::{Error, Result};
use crate::su2::{Direction, SpinSign};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

/// Minimum separation for two analyzer directions to count as distinct.
const DISTINCT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LhvStrategy {
    /// Particle 1's outcome for labels `a`, `b`, `c`.
    pub assignment: [SpinSign; 3],
}

impl LhvStrategy {
    /// All eight strategies; index bit `i` is set when label `i` reads `−1`.
    pub fn all() -> [LhvStrategy; 8] {
        std::array::from_fn(LhvStrategy::from_index)
    }

    pub fn from_index(index: usize) -> LhvStrategy {
        LhvStrategy {
            assignment: std::array::from_fn(|i| SpinSign::from_up(index >> i & 1 == 0)),
        }
    }

    pub fn index(&self) -> usize {
        self.assignment
            .iter()
            .enumerate()
            .map(|(i, s)| usize::from(*s == SpinSign::Down) << i)
            .sum()
    }

    pub fn particle1(&self, label: usize) -> SpinSign {
        self.assignment[label]
    }

    pub fn particle2(&self, label: usize) -> SpinSign {
        -self.assignment[label]
    }

    /// `λ₁(i) · λ₂(j)`.
    pub fn product(&self, i: usize, j: usize) -> i64 {
        i64::from((self.particle1(i) * self.particle2(j)).value())
    }

    /// Whether the pair measured at `(i, j)` reads `(+, +)`.
    pub fn plus_plus(&self, i: usize, j: usize) -> bool {
        self.particle1(i) == SpinSign::Up && self.particle2(j) == SpinSign::Up
    }
}

/// A strategy with its exact pairwise correlations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyRow {
    pub strategy: LhvStrategy,
    pub e_ab: CorrelationValue,
    pub e_ac: CorrelationValue,
    pub e_bc: CorrelationValue,
}

impl StrategyRow {
    fn new(strategy: LhvStrategy) -> StrategyRow {
        let e = |i, j| CorrelationValue::new(strategy.product(i, j) as f64).expect("±1");
        StrategyRow {
            strategy,
            e_ab: e(A, B),
            e_ac: e(A, C),
            e_bc: e(B, C),
        }
    }

    pub fn bell(&self) -> InequalityReport {
        bell_original(self.e_ab, self.e_ac, self.e_bc)
    }

    pub fn wigner(&self) -> InequalityReport {
        let p = |i, j| f64::from(u8::from(self.strategy.plus_plus(i, j)));
        wigner_from_probabilities(p(A, B), p(A, C), p(C, B))
    }
}

fn check_distinct(dirs: &[Direction; 3]) -> Result<()> {
    for (i, j) in [(A, B), (A, C), (B, C)] {
        if dirs[i].angle_to(&dirs[j]) <= DISTINCT_TOL {
            return Err(Error::DuplicateDirections);
        }
    }
    Ok(())
}

/// Every deterministic strategy over the three directions, in index order.
///
/// The directions only label the analyzers; they must be pairwise distinct.
pub fn enumerate_lhv_strategies(dirs: &[Direction; 3]) -> Result<Vec<StrategyRow>> {
    check_distinct(dirs)?;
    Ok(LhvStrategy::all()
        .into_iter()
        .map(StrategyRow::new)
        .collect())
}

/// Correlations `(E_ab, E_ac, E_bc)` of a weighted mixture of strategies.
/// Weights must be non-negative with a positive sum; they are normalized here.
pub fn mixture_correlations(
    rows: &[StrategyRow],
    weights: &[f64],
) -> Result<[CorrelationValue; 3]> {
    let total: f64 = weights.iter().sum();
    let mut e = [0.0; 3];
    for (row, w) in rows.iter().zip(weights) {
        let w = w / total;
        e[0] += w * row.e_ab.value();
        e[1] += w * row.e_ac.value();
        e[2] += w * row.e_bc.value();
    }
    // Rounding in the weighted sum can push a ±1 mixture a hair outside the range.
    let clamp = |v: f64| CorrelationValue::new(v.clamp(-1.0, 1.0));
    Ok([clamp(e[0])?, clamp(e[1])?, clamp(e[2])?])
}

/// Hidden-vector runs over three directions, tallied by realized strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LhvTripleEstimate {
    pub n_trials: u64,
    /// Indexed by [`LhvStrategy::index`].
    pub strategy_counts: [u64; 8],
}

impl LhvTripleEstimate {
    fn product_sum(&self, i: usize, j: usize) -> i64 {
        LhvStrategy::all()
            .iter()
            .zip(self.strategy_counts)
            .map(|(s, count)| s.product(i, j) * count as i64)
            .sum()
    }

    fn plus_plus_count(&self, i: usize, j: usize) -> u64 {
        LhvStrategy::all()
            .iter()
            .zip(self.strategy_counts)
            .filter(|(s, _)| s.plus_plus(i, j))
            .map(|(_, count)| count)
            .sum()
    }

    fn correlation(&self, i: usize, j: usize) -> CorrelationValue {
        CorrelationValue::new(self.product_sum(i, j) as f64 / self.n_trials as f64)
            .expect("mean of ±1 products")
    }

    pub fn e_ab(&self) -> CorrelationValue {
        self.correlation(A, B)
    }

    pub fn e_ac(&self) -> CorrelationValue {
        self.correlation(A, C)
    }

    pub fn e_bc(&self) -> CorrelationValue {
        self.correlation(B, C)
    }

    /// Standard error of each pairwise mean.
    pub fn std_error(&self, e: CorrelationValue) -> f64 {
        ((1.0 - e.value().powi(2)).max(0.0) / self.n_trials as f64).sqrt()
    }

    /// Bell's inequality evaluated on integer sums, so a saturated bound
    /// cannot flip to violated through rounding.
    pub fn bell_report(&self) -> InequalityReport {
        let n = self.n_trials as f64;
        let lhs = (self.product_sum(A, B) - self.product_sum(A, C)).abs();
        let rhs = self.n_trials as i64 + self.product_sum(B, C);
        InequalityReport::new(lhs as f64 / n, rhs as f64 / n)
    }

    pub fn wigner_report(&self) -> InequalityReport {
        let n = self.n_trials as f64;
        let lhs = self.plus_plus_count(A, B);
        let rhs = self.plus_plus_count(A, C) + self.plus_plus_count(C, B);
        InequalityReport::new(lhs as f64 / n, rhs as f64 / n)
    }
}

/// Samples the hidden-vector model at all three directions from shared draws.
pub fn estimate_lhv_triple(
    dirs: &[Direction; 3],
    n: u64,
    rng: &RngStream,
) -> Result<LhvTripleEstimate> {
    check_distinct(dirs)?;
    if n == 0 {
        return Err(Error::ZeroTrials);
    }
    let axes = dirs.map(|d| d.unit_vector());
    let chunks = n.div_ceil(CHUNK_TRIALS);
    let strategy_counts = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let len = CHUNK_TRIALS.min(n - chunk * CHUNK_TRIALS);
            let mut stream = rng.split(chunk);
            let mut counts = [0u64; 8];
            for _ in 0..len {
                let strategy = LhvStrategy {
                    assignment: hidden_signs(&axes, &mut stream),
                };
                counts[strategy.index()] += 1;
            }
            counts
        })
        .reduce(
            || [0u64; 8],
            |mut acc, c| {
                acc.iter_mut().zip(c).for_each(|(a, b)| *a += b);
                acc
            },
        );
    Ok(LhvTripleEstimate {
        n_trials: n,
        strategy_counts,
    })
}
