use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::PointConfiguration;
use crate::{Error, Result};

/// Histogram estimates over a common set of bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalStatistics {
    pub edges: Vec<f64>,
    pub samples: usize,
    /// ρ̂₁ per bin (mean count / width) and its standard error.
    pub rho1: Vec<f64>,
    pub rho1_se: Vec<f64>,
    /// ρ̂₂ on bin pairs: mean number of ordered pairs of distinct points
    /// divided by the product of widths.
    #[serde(skip)]
    pub rho2: DMatrix<f64>,
    /// Moments of the total count over all bins.
    pub count_mean: f64,
    pub count_var: f64,
    pub count_mean_se: f64,
}

pub fn empirical_statistics(configs: &[PointConfiguration], edges: &[f64]) -> Result<EmpiricalStatistics> {
    if configs.is_empty() {
        return Err(Error::InsufficientPoints("no configurations".into()));
    }
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameters("bin edges must increase".into()));
    }
    let nb = edges.len() - 1;
    let n = configs.len() as f64;
    let mut sum = vec![0.0; nb];
    let mut sum_sq = vec![0.0; nb];
    let mut pairs = DMatrix::<f64>::zeros(nb, nb);
    let mut totals = Vec::with_capacity(configs.len());
    let bin = |x: f64| -> Option<usize> {
        if x < edges[0] || x > edges[nb] {
            return None;
        }
        Some(edges.partition_point(|&e| e <= x).saturating_sub(1).min(nb - 1))
    };
    for c in configs {
        let mut counts = vec![0.0; nb];
        for &x in &c.points {
            if let Some(b) = bin(x) {
                counts[b] += 1.0;
            }
        }
        for i in 0..nb {
            sum[i] += counts[i];
            sum_sq[i] += counts[i] * counts[i];
            for j in 0..nb {
                pairs[(i, j)] += counts[i] * (counts[j] - if i == j { 1.0 } else { 0.0 });
            }
        }
        totals.push(counts.iter().sum::<f64>());
    }
    let width: Vec<f64> = edges.windows(2).map(|w| w[1] - w[0]).collect();
    let mut rho1 = Vec::with_capacity(nb);
    let mut rho1_se = Vec::with_capacity(nb);
    for i in 0..nb {
        let mean = sum[i] / n;
        let var = if n > 1.0 { (sum_sq[i] - n * mean * mean) / (n - 1.0) } else { 0.0 };
        rho1.push(mean / width[i]);
        rho1_se.push((var.max(0.0) / n).sqrt() / width[i]);
    }
    let rho2 = DMatrix::from_fn(nb, nb, |i, j| pairs[(i, j)] / (n * width[i] * width[j]));
    let count_mean = totals.iter().sum::<f64>() / n;
    let count_var = if n > 1.0 {
        totals.iter().map(|c| (c - count_mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(EmpiricalStatistics {
        edges: edges.to_vec(),
        samples: configs.len(),
        rho1,
        rho1_se,
        rho2,
        count_mean,
        count_var,
        count_mean_se: (count_var / n).sqrt(),
    })
}
