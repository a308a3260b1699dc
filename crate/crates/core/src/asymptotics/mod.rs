//! Closed-form expectations, the tail transform and tail-limit checks, the
//! counting law of large numbers and decay-rate estimates.

mod expectations;
mod tail;

use serde::{Deserialize, Serialize};

pub use expectations::{expected_alpha_sum, expected_beta_sum};
pub use tail::{
    integrated_intensity, log_kernel_constants, square_integral, tail_convergence_check,
    tail_transform_apply, FirstIntensity, ScaleDeviation, TailGrid, TailTransform, TransformMode,
};

use crate::sampler::PointConfiguration;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    /// τ for counting estimates, j for decay estimates.
    pub at: f64,
    pub mean: f64,
    pub var: f64,
    pub stderr: f64,
}

fn estimate(at: f64, xs: &[f64]) -> MeanEstimate {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if n > 1.0 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    MeanEstimate { at, mean, var, stderr: (var / n).sqrt() }
}

/// N_τ/τ with N_τ = #{points in [0, τ]}, across configurations.
pub fn counting_lln(configs: &[PointConfiguration], taus: &[f64]) -> Result<Vec<MeanEstimate>> {
    if configs.is_empty() {
        return Err(Error::InsufficientPoints("no configurations".into()));
    }
    Ok(taus
        .iter()
        .map(|&tau| {
            let v: Vec<f64> = configs
                .iter()
                .map(|c| c.points.iter().filter(|&&x| (0.0..=tau).contains(&x)).count() as f64 / tau)
                .collect();
            estimate(tau, &v)
        })
        .collect())
}

/// Mean of x_j^{1/j} (x_j the j-th largest point) for j = 1..=j_max.
pub fn decay_rate_estimate(configs: &[PointConfiguration], j_max: usize) -> Result<Vec<MeanEstimate>> {
    if configs.is_empty() {
        return Err(Error::InsufficientPoints("no configurations".into()));
    }
    if let Some(c) = configs.iter().find(|c| c.len() < j_max) {
        return Err(Error::InsufficientPoints(format!(
            "a configuration has {} points, need {j_max}",
            c.len()
        )));
    }
    Ok((1..=j_max)
        .map(|j| {
            let v: Vec<f64> = configs.iter().map(|c| c.points[j - 1].powf(1.0 / j as f64)).collect();
            estimate(j as f64, &v)
        })
        .collect())
}
