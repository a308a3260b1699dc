//! Kernel families, the (z, z') → (A, B, C) map, Fourier transforms and
//! admissibility.

mod laguerre;
mod params;
mod stationary;
mod whittaker;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use laguerre::{laguerre_cd_kernel, laguerre_cd_kernel_ratio};
pub use params::{classify_series, Series, SpectralParams};
pub use stationary::{
    admissible, fourier_khat, fourier_numeric, ln_shc, sinc, stationary_kernel, stationary_profile,
    tail_constants, Admissibility, TailConstants, Variant,
};
pub use whittaker::{whittaker_kernel, WhittakerKernel, NEAR_DIAGONAL};

use crate::{Error, Result};

/// Open interval (lo, hi) on which a kernel is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub const REAL: Domain = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const POSITIVE: Domain = Domain { lo: 0.0, hi: f64::INFINITY };

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// Anything that can be discretized into an integral operator.
pub trait Kernel: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> Result<f64>;

    fn domain(&self) -> Domain {
        Domain::REAL
    }

    /// Matrix K(xs[i], ys[j]).
    fn gram(&self, xs: &[f64], ys: &[f64]) -> Result<DMatrix<f64>> {
        let rows: Vec<Vec<f64>> = xs
            .par_iter()
            .map(|&x| ys.iter().map(|&y| self.eval(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_fn(xs.len(), ys.len(), |i, j| rows[i][j]))
    }

    /// Symmetric matrix K(xs[i], xs[j]); only the upper triangle is evaluated.
    fn gram_sym(&self, xs: &[f64]) -> Result<DMatrix<f64>> {
        let n = xs.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| self.eval(xs[i], xs[j])).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_fn(n, n, |i, j| {
            if i <= j {
                rows[i][j - i]
            } else {
                rows[j][i - j]
            }
        }))
    }
}

/// A kernel given by a closure, e.g. a rank-one test kernel.
pub struct FnKernel<F> {
    pub f: F,
    pub domain: Domain,
}

impl<F: Fn(f64, f64) -> f64 + Send + Sync> Kernel for FnKernel<F> {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok((self.f)(x, y))
    }
    fn domain(&self) -> Domain {
        self.domain
    }
}

/// Selects one kernel family together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum KernelSpec {
    Whittaker(SpectralParams),
    Stationary(TailConstants),
    Sine,
    LaguerreCd { n: usize, mu: f64 },
}

impl KernelSpec {
    pub fn label(&self) -> String {
        match self {
            KernelSpec::Whittaker(p) => format!("whittaker(z={}, z'={})", p.z, p.z_prime),
            KernelSpec::Stationary(c) => format!("stationary({:?}, A={}, B={})", c.variant, c.a, c.b),
            KernelSpec::Sine => "sine".into(),
            KernelSpec::LaguerreCd { n, mu } => format!("laguerre-cd(N={n}, mu={mu})"),
        }
    }
}

impl Kernel for KernelSpec {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            KernelSpec::Whittaker(p) => whittaker_kernel(p, x, y),
            KernelSpec::Stationary(c) => Ok(stationary_kernel(c, x, y)),
            KernelSpec::Sine => Ok(sinc(PI * (x - y))),
            KernelSpec::LaguerreCd { n, mu } => laguerre_cd_kernel(*n, *mu, x, y),
        }
    }

    fn domain(&self) -> Domain {
        match self {
            KernelSpec::Whittaker(_) | KernelSpec::LaguerreCd { .. } => Domain::POSITIVE,
            _ => Domain::REAL,
        }
    }

    fn gram(&self, xs: &[f64], ys: &[f64]) -> Result<DMatrix<f64>> {
        let KernelSpec::Whittaker(p) = self else {
            return default_gram(self, xs, ys);
        };
        let k = WhittakerKernel::new(*p)?;
        let a = k.nodes(xs)?;
        let b = k.nodes(ys)?;
        let rows: Vec<Vec<f64>> = a
            .par_iter()
            .map(|u| b.iter().map(|v| k.pair(u, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_fn(xs.len(), ys.len(), |i, j| rows[i][j]))
    }

    fn gram_sym(&self, xs: &[f64]) -> Result<DMatrix<f64>> {
        let KernelSpec::Whittaker(p) = self else {
            return default_gram_sym(self, xs);
        };
        let k = WhittakerKernel::new(*p)?;
        let a = k.nodes(xs)?;
        let n = xs.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| k.pair(&a[i], &a[j])).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_fn(n, n, |i, j| if i <= j { rows[i][j - i] } else { rows[j][i - j] }))
    }
}

struct Plain<'a>(&'a KernelSpec);

impl Kernel for Plain<'_> {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.0.eval(x, y)
    }
}

fn default_gram(k: &KernelSpec, xs: &[f64], ys: &[f64]) -> Result<DMatrix<f64>> {
    Plain(k).gram(xs, ys)
}

fn default_gram_sym(k: &KernelSpec, xs: &[f64]) -> Result<DMatrix<f64>> {
    Plain(k).gram_sym(xs)
}

/// Check that every point lies in the kernel's domain.
pub fn check_domain(k: &dyn Kernel, points: &[f64]) -> Result<()> {
    let d = k.domain();
    match points.iter().find(|&&x| !d.contains(x)) {
        Some(x) => Err(Error::Domain(format!("point {x} outside ({}, {})", d.lo, d.hi))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_matches_pointwise() {
        let p = SpectralParams::real(0.25, 0.75).unwrap();
        let spec = KernelSpec::Whittaker(p);
        let xs = [0.2, 0.9, 0.90001, 3.0];
        let g = spec.gram_sym(&xs).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let v = spec.eval(xs[i], xs[j]).unwrap();
                assert!((g[(i, j)] - v).abs() < 1e-12 * v.abs().max(1e-3));
            }
        }
        let r = spec.gram(&xs[..2], &xs).unwrap();
        assert!((r[(1, 3)] - g[(1, 3)]).abs() < 1e-15);
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = KernelSpec::Whittaker(SpectralParams::real(0.25, 0.75).unwrap());
        let s = serde_json::to_string(&spec).unwrap();
        let back: KernelSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(spec, back);
    }
}
