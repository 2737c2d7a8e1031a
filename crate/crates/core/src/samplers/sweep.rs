use serde::{Deserialize, Serialize};

use super::estimate::{estimate_correlation, estimate_lhv_correlation};
use super::{MeasurementSettings, RngStream};
use crate::correlation::expected_correlation;
use crate::error::{Error, Result};

/// One point of the `E(θ)` comparison curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta: f64,
    pub analytic: f64,
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub lhv_mean: f64,
    pub lhv_std_error: f64,
    pub n: u64,
}

/// Singlet and hidden-vector estimates at each angle of `theta_grid`.
///
/// Grid point `i` uses stream `2i` for the singlet sampler and `2i + 1` for
/// the hidden-vector model.
pub fn sweep_theta(
    theta_grid: &[f64],
    n_per_point: u64,
    master_seed: u64,
) -> Result<Vec<SweepRow>> {
    if theta_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if n_per_point == 0 {
        return Err(Error::ZeroTrials);
    }
    theta_grid
        .iter()
        .enumerate()
        .map(|(i, &theta)| {
            let settings = MeasurementSettings::planar(theta)?;
            let i = i as u64;
            let mc =
                estimate_correlation(&settings, n_per_point, &RngStream::new(master_seed, 2 * i))?;
            let lhv = estimate_lhv_correlation(
                &settings,
                n_per_point,
                &RngStream::new(master_seed, 2 * i + 1),
            )?;
            Ok(SweepRow {
                theta,
                analytic: expected_correlation(theta).value(),
                mc_mean: mc.mean,
                mc_std_error: mc.std_error,
                lhv_mean: lhv.mean,
                lhv_std_error: lhv.std_error,
                n: n_per_point,
            })
        })
        .collect()
}
