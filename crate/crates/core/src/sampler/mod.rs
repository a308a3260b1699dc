//! Exact sampling of determinantal processes from a discretized kernel,
//! Poisson–Dirichlet stick-breaking, the gamma lifting and empirical
//! statistics of samples.
//!
//! Every sample owns a ChaCha8 stream derived from `(root seed, index)`, so
//! results depend only on the seed and the index, never on thread count.

mod stats;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Gamma, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use stats::{empirical_statistics, EmpiricalStatistics};

use crate::operators::DiscretizedOperator;
use crate::specfun::{make_quadrature, QuadratureKind};
use crate::{Error, Result};

/// Eigenvalues below this are never selected.
pub const EIGEN_FLOOR: f64 = 1e-12;

pub fn stream_rng(root: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub root: u64,
    pub stream: u64,
}

/// Finite configuration, points stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub points: Vec<f64>,
    /// Intervals the configuration lives on; bounds may be infinite.
    #[serde(rename = "region")]
    pub support: Vec<(f64, f64)>,
    pub seed: Option<SeedRecord>,
}

impl PointConfiguration {
    pub fn new(mut points: Vec<f64>, support: Vec<(f64, f64)>, seed: Option<SeedRecord>) -> Result<Self> {
        if let Some(x) = points
            .iter()
            .find(|&&x| !support.iter().any(|&(a, b)| a <= x && x <= b))
        {
            return Err(Error::Domain(format!("point {x} outside the support")));
        }
        points.sort_by(|a, b| b.total_cmp(a));
        Ok(PointConfiguration { points, support, seed })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ascending(&self) -> Vec<f64> {
        self.points.iter().rev().copied().collect()
    }

    pub fn count_in(&self, a: f64, b: f64) -> usize {
        self.points.iter().filter(|&&x| a <= x && x < b).count()
    }
}

/// Draw x in [lo, hi] with density linear from f0 (at lo) to f1 (at hi).
fn linear_inverse_cdf(lo: f64, hi: f64, f0: f64, f1: f64, u: f64) -> f64 {
    let len = hi - lo;
    let mass = 0.5 * (f0 + f1) * len;
    let target = u * mass;
    let slope = (f1 - f0) / len;
    let s = if slope.abs() * len < 1e-12 * (f0 + f1).max(f64::MIN_POSITIVE) {
        if f0 > 0.0 { target / f0 } else { u * len }
    } else {
        // f0 s + slope s^2 / 2 = target
        2.0 * target / (f0 + (f0 * f0 + 2.0 * slope * target).max(0.0).sqrt())
    };
    (lo + s).clamp(lo, hi)
}

/// Place a point in cell `i` given per-node densities (mass / weight).
fn place(op: &DiscretizedOperator, density: &[f64], i: usize, rng: &mut impl Rng) -> f64 {
    let (lo, hi) = op.cells[i];
    let x = op.nodes[i];
    let q = density[i].max(0.0);
    let edge = |j: Option<usize>, at: f64| -> f64 {
        match j {
            Some(j) => {
                let t = (at - x) / (op.nodes[j] - x);
                (q + t * (density[j].max(0.0) - q)).max(0.0)
            }
            None => q,
        }
    };
    let left = (i > 0 && op.cells[i - 1].1 == lo).then(|| i - 1);
    let right = (i + 1 < op.len() && op.cells[i + 1].0 == hi).then(|| i + 1);
    let fl = edge(left, lo);
    let fr = edge(right, hi);
    let m_left = 0.5 * (fl + q) * (x - lo);
    let m_right = 0.5 * (q + fr) * (hi - x);
    let total = m_left + m_right;
    if !(total > 0.0) {
        return rng.random_range(lo..hi);
    }
    if rng.random::<f64>() * total < m_left {
        linear_inverse_cdf(lo, x, fl, q, rng.random())
    } else {
        linear_inverse_cdf(x, hi, q, fr, rng.random())
    }
}

fn pick(weights: &[f64], rng: &mut impl Rng) -> usize {
    let total: f64 = weights.iter().map(|w| w.max(0.0)).sum();
    let mut u = rng.random::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        u -= w.max(0.0);
        if u <= 0.0 {
            return i;
        }
    }
    weights.iter().rposition(|w| *w > 0.0).unwrap_or(0)
}

/// One exact sample of the determinantal process with the discretized
/// kernel: Bernoulli choice of eigenvectors, then sequential sampling of the
/// resulting projection process.
pub fn sample_dpp_with(op: &DiscretizedOperator, rng: &mut impl Rng) -> Result<Vec<f64>> {
    let values = op.clipped_eigenvalues()?;
    let vectors = &op.spectrum().vectors;
    let chosen: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l >= EIGEN_FLOOR && rng.random::<f64>() < l)
        .map(|(i, _)| i)
        .collect();
    let n = op.len();
    let k = chosen.len();
    let mut points = Vec::with_capacity(k);
    if k == 0 {
        return Ok(points);
    }
    let v = vectors.select_columns(chosen.iter());
    // residual diagonal of the projection P = V V^T, shrinking as points are fixed
    let mut d: Vec<f64> = (0..n).map(|i| v.row(i).norm_squared()).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let i = pick(&d, rng);
        let density: Vec<f64> = d.iter().zip(&op.weights).map(|(a, w)| a / w).collect();
        points.push(place(op, &density, i, rng));
        let pivot = d[i];
        if !(pivot > 0.0) {
            break;
        }
        let vi = v.row(i);
        let mut col: Vec<f64> = (0..n).map(|r| v.row(r).dot(&vi)).collect();
        for b in &basis {
            let s = b[i];
            for (c, bv) in col.iter_mut().zip(b) {
                *c -= s * bv;
            }
        }
        let norm = pivot.sqrt();
        for c in col.iter_mut() {
            *c /= norm;
        }
        for (dj, c) in d.iter_mut().zip(&col) {
            *dj = (*dj - c * c).max(0.0);
        }
        d[i] = 0.0;
        basis.push(col);
    }
    Ok(points)
}

pub fn sample_dpp(op: &DiscretizedOperator, root: u64, index: u64) -> Result<PointConfiguration> {
    let pts = sample_dpp_with(op, &mut stream_rng(root, index))?;
    PointConfiguration::new(pts, op.region.intervals.clone(), Some(SeedRecord { root, stream: index }))
}

/// `count` independent samples, streams 0..count, in index order.
pub fn sample_dpp_many(op: &DiscretizedOperator, count: usize, root: u64) -> Result<Vec<PointConfiguration>> {
    op.check_spectrum()?;
    (0..count as u64).into_par_iter().map(|i| sample_dpp(op, root, i)).collect()
}

/// Point of the Thoma simplex (one-sided samples leave `beta` empty).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThomaPoint {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// Number of coordinates generated.
    pub truncation: usize,
    /// Mass not assigned to any coordinate.
    pub residual: f64,
}

impl ThomaPoint {
    pub fn to_configuration(&self, seed: Option<SeedRecord>) -> PointConfiguration {
        PointConfiguration { points: self.alpha.clone(), support: vec![(0.0, 1.0)], seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StickOptions {
    pub max_sticks: usize,
    pub residual_tol: f64,
}

impl Default for StickOptions {
    fn default() -> Self {
        StickOptions { max_sticks: 200, residual_tol: 1e-12 }
    }
}

/// Poisson–Dirichlet(t) by stick-breaking with Beta(1, t) fractions, sorted.
pub fn sample_poisson_dirichlet_with(t: f64, opt: &StickOptions, rng: &mut impl Rng) -> Result<ThomaPoint> {
    let beta = Beta::new(1.0, t)
        .map_err(|e| Error::InvalidParameters(format!("t = {t}: {e}")))?;
    let mut rest = 1.0;
    let mut alpha = Vec::new();
    while alpha.len() < opt.max_sticks && rest >= opt.residual_tol {
        let v: f64 = beta.sample(rng);
        alpha.push(rest * v);
        rest *= 1.0 - v;
    }
    alpha.sort_by(|a, b| b.total_cmp(a));
    Ok(ThomaPoint { truncation: alpha.len(), alpha, beta: Vec::new(), residual: rest })
}

pub fn sample_poisson_dirichlet(t: f64, opt: &StickOptions, root: u64, index: u64) -> Result<ThomaPoint> {
    sample_poisson_dirichlet_with(t, opt, &mut stream_rng(root, index))
}

pub fn sample_poisson_dirichlet_many(t: f64, opt: &StickOptions, count: usize, root: u64) -> Result<Vec<ThomaPoint>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample_poisson_dirichlet(t, opt, root, i))
        .collect()
}

/// Multiply every point by one Gamma(t, 1) draw.
pub fn lift(config: &PointConfiguration, t: f64, rng: &mut impl Rng) -> Result<PointConfiguration> {
    let g = Gamma::new(t, 1.0).map_err(|e| Error::InvalidParameters(format!("t = {t}: {e}")))?;
    let s: f64 = g.sample(rng);
    let support = config
        .support
        .iter()
        .map(|&(a, b)| (if a > 0.0 { 0.0 } else { f64::NEG_INFINITY }, if b > 0.0 { f64::INFINITY } else { 0.0 }))
        .collect();
    Ok(PointConfiguration {
        points: config.points.iter().map(|x| x * s).collect(),
        support,
        seed: config.seed,
    })
}

/// E[Σ (s x_i)^m] for a fixed configuration and s ~ Gamma(t, 1), by
/// generalized Gauss–Laguerre quadrature of the gamma density.
pub fn lifted_moment(config: &PointConfiguration, t: f64, m: u32) -> Result<f64> {
    let rule = make_quadrature(QuadratureKind::GaussLaguerre { alpha: t - 1.0 }, 32)?;
    let norm = crate::specfun::ln_gamma_real(t)?.exp();
    let es = rule.integrate(|s| s.powi(m as i32)) / norm;
    Ok(es * config.points.iter().map(|x| x.powi(m as i32)).sum::<f64>())
}

/// Homogeneous Poisson process of the given rate on [a, b].
pub fn sample_poisson(rate: f64, a: f64, b: f64, rng: &mut impl Rng) -> Result<PointConfiguration> {
    let mean = rate * (b - a);
    let n = if mean > 0.0 {
        let p = Poisson::new(mean).map_err(|e| Error::InvalidParameters(e.to_string()))?;
        p.sample(rng) as usize
    } else {
        0
    };
    let pts = (0..n).map(|_| rng.random_range(a..b)).collect();
    PointConfiguration::new(pts, vec![(a, b)], None)
}
