use serde::{Deserialize, Serialize};

use crate::kernels::{
    stationary_profile, tail_constants, Kernel, KernelSpec, Series, SpectralParams, TailConstants,
    Variant,
};
use crate::operators::correlation;
use crate::sampler::PointConfiguration;
use crate::specfun::integrate_adaptive;
use crate::{Error, Result};

/// First correlation function on (0, 1] used by the exact transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FirstIntensity {
    /// ρ₁(x) = t (1 - x)^{t-1} / x of the Poisson–Dirichlet(t) process.
    Watterson { t: f64 },
    /// ρ₁(x) = K(x, x).
    KernelDiagonal { kernel: KernelSpec },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum TransformMode {
    /// ξ = ∫_x^1 ρ₁(y) dy.
    Exact { intensity: FirstIntensity },
    /// x = e^{-ξ/C}.
    Logarithmic,
}

/// Map (0, 1] → [0, ∞) followed by the shift ξ ↦ ξ - τ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailTransform {
    pub mode: TransformMode,
    pub c: f64,
    pub shift: f64,
}

impl TailTransform {
    pub fn logarithmic(c: f64, shift: f64) -> Self {
        TailTransform { mode: TransformMode::Logarithmic, c, shift }
    }

    pub fn map(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::Domain(format!("tail transform needs x in (0, 1], got {x}")));
        }
        let xi = match &self.mode {
            TransformMode::Logarithmic => -self.c * x.ln(),
            TransformMode::Exact { intensity } => integrated_intensity(intensity, x)?,
        };
        Ok(xi - self.shift)
    }
}

/// ∫_x^1 ρ₁(y) dy.
pub fn integrated_intensity(rho: &FirstIntensity, x: f64) -> Result<f64> {
    match rho {
        FirstIntensity::Watterson { t } => {
            // = (1-x)^t + t ∫_0^{-ln x} (1 - e^{-s})^t ds
            let t = *t;
            let s_max = -x.ln();
            let rest = integrate_adaptive(|s| (-(-s).exp_m1()).max(0.0).powf(t), 0.0, s_max, 1e-13, 1e-12)?;
            Ok((1.0 - x).powf(t) + t * rest)
        }
        FirstIntensity::KernelDiagonal { kernel } => {
            integrate_adaptive(|y| kernel.eval(y, y).unwrap_or(f64::NAN), x, 1.0, 1e-12, 1e-10)
        }
    }
}

pub fn tail_transform_apply(tt: &TailTransform, config: &PointConfiguration) -> Result<PointConfiguration> {
    let pts = config.points.iter().map(|&x| tt.map(x)).collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(pts, vec![(-tt.shift, f64::INFINITY)], config.seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleDeviation {
    pub scale: f64,
    pub deviation: f64,
}

/// Compact grid in tail coordinates on which correlations are compared,
/// measured in units of the correlation length 1/B of the limit kernel
/// (so x spans the fixed ratio e^{-2 hi} below each scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for TailGrid {
    fn default() -> Self {
        TailGrid { lo: 0.0, hi: 3.0, points: 7 }
    }
}

/// For each scale r, sup over the grid of
/// |(x₁x₂/C²) ρ₂(x₁, x₂) - det[k(u_a - u_b)]| with x = r e^{-u/C}.
pub fn tail_convergence_check(p: &SpectralParams, scales: &[f64], grid: &TailGrid) -> Result<Vec<ScaleDeviation>> {
    let consts = tail_constants(p);
    let c = consts.c.ok_or_else(|| Error::InvalidParameters("tail constant C undefined".into()))?;
    let spec = KernelSpec::Whittaker(*p);
    let unit = 1.0 / consts.b;
    let us: Vec<f64> = (0..grid.points)
        .map(|i| unit * (grid.lo + (grid.hi - grid.lo) * i as f64 / (grid.points.max(2) - 1) as f64))
        .collect();
    scales
        .iter()
        .map(|&r| {
            let mut dev: f64 = 0.0;
            for (i, &u) in us.iter().enumerate() {
                for &v in &us[i..] {
                    let x1 = r * (-u / c).exp();
                    let x2 = r * (-v / c).exp();
                    let rho2 = if u == v { 0.0 } else { correlation(&spec, &[x1, x2])? };
                    let scaled = x1 * x2 / (c * c) * rho2;
                    let kv = stationary_profile(&consts, u - v);
                    dev = dev.max((scaled - (1.0 - kv * kv)).abs());
                }
            }
            Ok(ScaleDeviation { scale: r, deviation: dev })
        })
        .collect()
}

/// Constants of the translation-invariant kernel in the coordinate ζ = -ln x,
/// k(ζ) = sh((z-z')ζ/2) / ((z-z') sh(ζ/2)).
pub fn log_kernel_constants(p: &SpectralParams) -> TailConstants {
    let a = 0.5 * (p.z - p.z_prime).norm();
    let variant = match p.series {
        Series::Principal => Variant::SinSh,
        Series::Complementary => Variant::ShSh,
        Series::Intersection => Variant::RatioLimit,
    };
    TailConstants { a: if variant == Variant::RatioLimit { 0.0 } else { a }, b: 0.5, c: Some(1.0), variant }
}

/// ∫∫_{[0,τ]²} k(ξ - η)² dξ dη = 2 ∫_0^τ (τ - ζ) k(ζ)² dζ.
pub fn square_integral(c: &TailConstants, tau: f64) -> Result<f64> {
    let f = |z: f64| {
        let k = stationary_profile(c, z);
        (tau - z) * k * k
    };
    // split so the adaptive rule sees the decay scale
    let mut total = 0.0;
    let mut a = 0.0;
    while a < tau {
        let b = (a + 5.0).min(tau);
        total += integrate_adaptive(f, a, b, 1e-14, 1e-12)?;
        a = b;
    }
    Ok(2.0 * total)
}
