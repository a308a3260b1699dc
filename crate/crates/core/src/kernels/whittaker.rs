//! The Whittaker kernel on (0, ∞):
//!
//! ```text
//! K(x, y) = (xy)^{-1/2} / (Γ(z)Γ(z')) · [W_κ(x)W_{κ-1}(y) - W_κ(y)W_{κ-1}(x)] / (x - y)
//! ```
//!
//! with κ = (z+z'+1)/2 and μ = (z-z')/2 in every W. On the diagonal,
//! `x K(x, x) = (W_κ' W_{κ-1} - W_κ W_{κ-1}') / (Γ(z)Γ(z'))`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::params::SpectralParams;
use crate::specfun::{ln_gamma, whittaker_w_ladder};
use crate::{Error, Result};

/// Pairs closer than this, relative to min(1, x), use the Taylor form. The
/// kernel varies on the scale x near the origin, so the switch shrinks there.
pub const NEAR_DIAGONAL: f64 = 1e-4;

fn near_diagonal(x: f64, y: f64) -> bool {
    (x - y).abs() < NEAR_DIAGONAL * x.min(y).min(1.0)
}
const REALNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Node {
    pub x: f64,
    /// W_κ(x), W_{κ-1}(x) and their derivatives.
    pub f: Complex64,
    pub g: Complex64,
    pub fp: Complex64,
    pub gp: Complex64,
}

#[derive(Debug, Clone)]
pub struct WhittakerKernel {
    pub params: SpectralParams,
    prefactor: Complex64,
}

impl WhittakerKernel {
    pub fn new(params: SpectralParams) -> Result<Self> {
        let prefactor = (-ln_gamma(params.z)? - ln_gamma(params.z_prime)?).exp();
        Ok(WhittakerKernel { params, prefactor })
    }

    pub(crate) fn node(&self, x: f64) -> Result<Node> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("Whittaker kernel needs x > 0, got {x}")));
        }
        let p = &self.params;
        let w = whittaker_w_ladder(p.kappa, p.mu, x, 3)?;
        let (f, g, h) = (w[0], w[1], w[2]);
        let one = Complex64::new(1.0, 0.0);
        let fp = (-0.5 + p.kappa / x) * f + p.z * p.z_prime / x * g;
        let gp = (-0.5 + (p.kappa - 1.0) / x) * g + (one - p.z) * (one - p.z_prime) / x * h;
        Ok(Node { x, f, g, fp, gp })
    }

    fn real(&self, v: Complex64, scale: f64) -> Result<f64> {
        if v.im.abs() > REALNESS_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Numerical(format!(
                "Whittaker kernel is not real: {v} (scale {scale:e})"
            )));
        }
        Ok(v.re)
    }

    pub(crate) fn pair(&self, a: &Node, b: &Node) -> Result<f64> {
        let (x, y) = (a.x, b.x);
        if near_diagonal(x, y) {
            let m = self.node(0.5 * (x + y))?;
            return self.near_diagonal(&m, 0.5 * (y - x));
        }
        let p1 = a.f * b.g;
        let p2 = b.f * a.g;
        let s = self.prefactor / ((x - y) * (x * y).sqrt());
        let scale = s.norm() * (p1.norm() + p2.norm());
        self.real(s * (p1 - p2), scale)
    }

    /// Value at (m - d, m + d) from the expansion about the midpoint `m`.
    fn near_diagonal(&self, m: &Node, d: f64) -> Result<f64> {
        let p = &self.params;
        let x = m.x;
        let q = |k: Complex64| 0.25 - k / x + (p.mu * p.mu - 0.25) / (x * x);
        let dq = |k: Complex64| k / (x * x) - 2.0 * (p.mu * p.mu - 0.25) / (x * x * x);
        let (k1, k2) = (p.kappa, p.kappa - 1.0);
        let (f, g, fp, gp) = (m.f, m.g, m.fp, m.gp);
        let fpp = q(k1) * f;
        let gpp = q(k2) * g;
        let fppp = dq(k1) * f + q(k1) * fp;
        let gppp = dq(k2) * g + q(k2) * gp;
        let lead = fp * g - f * gp;
        let corr = (fppp * g - f * gppp) / 6.0 + (fp * gpp - fpp * gp) / 2.0;
        let s = self.prefactor / ((x - d) * (x + d)).sqrt();
        let scale = s.norm() * ((fp * g).norm() + (f * gp).norm());
        self.real(s * (lead + d * d * corr), scale)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::Domain(format!(
                "Whittaker kernel needs x, y > 0, got ({x}, {y})"
            )));
        }
        if near_diagonal(x, y) {
            let m = self.node(0.5 * (x + y))?;
            return self.near_diagonal(&m, 0.5 * (y - x));
        }
        self.pair(&self.node(x)?, &self.node(y)?)
    }

    pub(crate) fn nodes(&self, xs: &[f64]) -> Result<Vec<Node>> {
        xs.par_iter().map(|&x| self.node(x)).collect()
    }
}

pub fn whittaker_kernel(params: &SpectralParams, x: f64, y: f64) -> Result<f64> {
    WhittakerKernel::new(*params)?.eval(x, y)
}
