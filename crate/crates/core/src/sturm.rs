//! Sturm–Liouville operators D f = (p f')' + q f that commute with the
//! restricted kernel operators, and a finite-difference check of
//! D_x K(x, y) = D_y K(x, y).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::kernels::{Kernel, SpectralParams, TailConstants, Variant};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Sine { tau: f64 },
    Stationary { constants: TailConstants, tau: f64 },
    Whittaker { params: SpectralParams, tau: f64 },
}

/// Changes to q for negative controls: (1 + relative) q + constant + quadratic x².
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct QPerturbation {
    pub relative: f64,
    pub constant: f64,
    pub quadratic: f64,
}

/// Perturbation used for negative controls. A constant shift of q is not a
/// control at all: it adds the same multiple of K to both sides.
pub const NEGATIVE_CONTROL: QPerturbation = QPerturbation { relative: 0.1, constant: 0.0, quadratic: 1.0 };

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SLCoefficients {
    pub provenance: Provenance,
    /// Interval on which the operator acts; p vanishes at its finite ends.
    pub domain: (f64, f64),
    pub perturbation: Option<QPerturbation>,
}

/// (sh(Bx)/B)², continuous at B = 0.
fn sh_over_b_sq(b: f64, x: f64) -> f64 {
    let u = b * x;
    let shc = if u.abs() < 1e-4 { 1.0 + u * u / 6.0 } else { u.sinh() / u };
    (x * shc).powi(2)
}

impl SLCoefficients {
    pub fn p(&self, x: f64) -> f64 {
        match &self.provenance {
            Provenance::Sine { tau } => x * x - tau * tau,
            Provenance::Stationary { constants, tau } => {
                sh_over_b_sq(constants.b, x) - sh_over_b_sq(constants.b, *tau)
            }
            Provenance::Whittaker { tau, .. } => x * (x - tau),
        }
    }

    pub fn dp(&self, x: f64) -> f64 {
        match &self.provenance {
            Provenance::Sine { .. } => 2.0 * x,
            Provenance::Stationary { constants, .. } => {
                let b = constants.b;
                if (b * x).abs() < 1e-8 {
                    2.0 * x
                } else {
                    (2.0 * b * x).sinh() / b
                }
            }
            Provenance::Whittaker { tau, .. } => 2.0 * x - tau,
        }
    }

    pub fn q(&self, x: f64) -> f64 {
        let base = match &self.provenance {
            Provenance::Sine { .. } => PI * PI * x * x,
            Provenance::Stationary { constants: c, .. } => {
                let s = sh_over_b_sq(c.b, x);
                match c.variant {
                    Variant::SinSh | Variant::ShLimit => (c.b * c.b + c.a * c.a) * s,
                    Variant::ShSh | Variant::RatioLimit => (c.b * c.b - c.a * c.a) * s,
                }
            }
            Provenance::Whittaker { params, tau } => {
                let a = params.a;
                -((a - 0.5 * x).powi(2) - params.t) * (x - tau) / x
            }
        };
        match self.perturbation {
            Some(d) => (1.0 + d.relative) * base + d.constant + d.quadratic * x * x,
            None => base,
        }
    }

    pub fn perturbed(&self, d: QPerturbation) -> Self {
        SLCoefficients { perturbation: Some(d), ..self.clone() }
    }
}

fn positive(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameters(format!("τ must be positive, got {tau}")));
    }
    Ok(())
}

/// p = x² - τ², q = π²x² on [-τ, τ].
pub fn sl_params_sine(tau: f64) -> Result<SLCoefficients> {
    positive(tau)?;
    Ok(SLCoefficients { provenance: Provenance::Sine { tau }, domain: (-tau, tau), perturbation: None })
}

/// p = (sh²Bx - sh²Bτ)/B², q = (B² ± A²) sh²(Bx)/B² on [-τ, τ]; + for sin/sh.
pub fn sl_params_stationary(c: &TailConstants, tau: f64) -> Result<SLCoefficients> {
    positive(tau)?;
    Ok(SLCoefficients {
        provenance: Provenance::Stationary { constants: *c, tau },
        domain: (-tau, tau),
        perturbation: None,
    })
}

/// p = x(x - τ), q = -((a - x/2)² - t)(x - τ)/x on (τ, ∞).
pub fn sl_params_whittaker(params: &SpectralParams, tau: f64) -> Result<SLCoefficients> {
    positive(tau)?;
    Ok(SLCoefficients {
        provenance: Provenance::Whittaker { params: *params, tau },
        domain: (tau, f64::INFINITY),
        perturbation: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdOptions {
    /// h = rel_step · max(1, |x|).
    pub rel_step: f64,
    pub richardson: bool,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions { rel_step: 1e-4, richardson: true }
    }
}

/// Fourth-order central first and second derivatives.
fn central(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<(f64, f64)> {
    let (m2, m1, c, p1, p2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    Ok((d1, d2))
}

fn derivatives(f: &dyn Fn(f64) -> Result<f64>, x: f64, fd: &FdOptions) -> Result<(f64, f64)> {
    let h = fd.rel_step * x.abs().max(1.0);
    let (a1, a2) = central(f, x, h)?;
    if !fd.richardson {
        return Ok((a1, a2));
    }
    let (b1, b2) = central(f, x, 0.5 * h)?;
    Ok(((16.0 * b1 - a1) / 15.0, (16.0 * b2 - a2) / 15.0))
}

/// D_x K(x, y) and D_y K(x, y).
pub fn apply_both(kernel: &dyn Kernel, sl: &SLCoefficients, x: f64, y: f64, fd: &FdOptions) -> Result<(f64, f64)> {
    let k = kernel.eval(x, y)?;
    let (kx, kxx) = derivatives(&|s| kernel.eval(s, y), x, fd)?;
    let (ky, kyy) = derivatives(&|s| kernel.eval(x, s), y, fd)?;
    let dx = sl.p(x) * kxx + sl.dp(x) * kx + sl.q(x) * k;
    let dy = sl.p(y) * kyy + sl.dp(y) * ky + sl.q(y) * k;
    Ok((dx, dy))
}

/// max over the grid of |D_x K - D_y K| / (1 + |D_x K|).
pub fn commutation_residual(
    kernel: &dyn Kernel,
    sl: &SLCoefficients,
    grid: &[(f64, f64)],
    fd: &FdOptions,
) -> Result<f64> {
    let (lo, hi) = sl.domain;
    let dom = kernel.domain();
    let mut worst: f64 = 0.0;
    for &(x, y) in grid {
        for v in [x, y] {
            let reach = 2.0 * fd.rel_step * v.abs().max(1.0);
            if !(v - reach > lo && v + reach < hi) || !(dom.contains(v - reach) && dom.contains(v + reach)) {
                return Err(Error::Domain(format!("grid point {v} touches the boundary of ({lo}, {hi})")));
            }
        }
        let (dx, dy) = apply_both(kernel, sl, x, y, fd)?;
        worst = worst.max((dx - dy).abs() / (1.0 + dx.abs()));
    }
    Ok(worst)
}

/// n × n grid on [lo, hi]² without the band |x - y| < band.
pub fn off_diagonal_grid(lo: f64, hi: f64, n: usize, band: f64) -> Vec<(f64, f64)> {
    let pts: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64).collect();
    let mut out = Vec::new();
    for &x in &pts {
        for &y in &pts {
            if (x - y).abs() >= band {
                out.push((x, y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelSpec;

    #[test]
    fn coefficient_values() {
        let s = sl_params_sine(1.0).unwrap();
        assert_eq!(s.p(1.0), 0.0);
        assert_eq!(s.p(-1.0), 0.0);
        assert_eq!(s.q(0.0), 0.0);
        assert!((s.p(0.5) + 0.75).abs() < 1e-15);
        assert!((s.q(0.5) - PI * PI / 4.0).abs() < 1e-14);

        let p = SpectralParams::real(0.25, 0.75).unwrap();
        let w = sl_params_whittaker(&p, 1.0).unwrap();
        assert_eq!(w.p(1.0), 0.0);
        assert_eq!(w.p(0.0), 0.0);
        assert_eq!(w.q(1.0), 0.0);
        assert!((w.p(2.0) - 2.0).abs() < 1e-15);
        assert!((w.q(2.0) + 0.03125).abs() < 1e-15);
    }

    #[test]
    fn stationary_coefficients_and_limit() {
        let c = TailConstants::new(Variant::SinSh, PI, 2.0 * PI).unwrap();
        let s = sl_params_stationary(&c, 0.5).unwrap();
        assert!(s.p(0.5).abs() < 1e-12 && s.p(-0.5).abs() < 1e-12);
        let b = 2.0 * PI;
        let want_p = ((b * 0.25).sinh().powi(2) - (b * 0.5).sinh().powi(2)) / (b * b);
        let want_q = (b * b + PI * PI) * (b * 0.25).sinh().powi(2) / (b * b);
        assert!((s.p(0.25) - want_p).abs() < 1e-13);
        assert!((s.q(0.25) - want_q).abs() < 1e-12);
        let near = sl_params_stationary(&TailConstants::new(Variant::SinSh, PI, 1e-6).unwrap(), 1.0).unwrap();
        let sine = sl_params_sine(1.0).unwrap();
        for x in [-0.7, 0.1, 0.9] {
            assert!((near.p(x) - sine.p(x)).abs() < 1e-10);
            assert!((near.q(x) - sine.q(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn sine_commutes() {
        let grid = off_diagonal_grid(-0.9, 0.9, 20, 1e-2);
        let r = commutation_residual(&KernelSpec::Sine, &sl_params_sine(1.0).unwrap(), &grid, &FdOptions::default())
            .unwrap();
        assert!(r <= 1e-6, "{r}");
    }

    #[test]
    fn constant_shift_of_q_still_commutes() {
        // adding c to q adds c K to both sides
        let grid = off_diagonal_grid(-0.9, 0.9, 10, 1e-2);
        let sl = sl_params_sine(1.0).unwrap().perturbed(QPerturbation { constant: 1.0, ..Default::default() });
        let r = commutation_residual(&KernelSpec::Sine, &sl, &grid, &FdOptions::default()).unwrap();
        assert!(r <= 1e-6, "{r}");
        let sl = sl_params_sine(1.0).unwrap().perturbed(QPerturbation { quadratic: 1.0, ..Default::default() });
        let r = commutation_residual(&KernelSpec::Sine, &sl, &grid, &FdOptions::default()).unwrap();
        assert!(r >= 1e-2, "{r}");
    }

    #[test]
    fn boundary_grid_is_rejected() {
        let r = commutation_residual(&KernelSpec::Sine, &sl_params_sine(1.0).unwrap(), &[(1.0, 0.0)], &FdOptions::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
