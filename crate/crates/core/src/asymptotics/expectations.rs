use std::f64::consts::PI;

use num_complex::Complex64;

use crate::kernels::{Series, SpectralParams};
use crate::specfun::digamma;
use crate::{Error, Result};

/// E(Σ α_i) as a function of (z, z'), valid off the diagonal z = z'.
fn alpha_sum_formula(z: Complex64, zp: Complex64) -> Result<Complex64> {
    let pi = Complex64::new(PI, 0.0);
    let d = z - zp;
    let front = (pi * z).sin() * (pi * zp).sin() / (pi * (pi * d).sin());
    let bracket = d * (z + zp - 1.0) / (2.0 * z * zp) + digamma(-zp)? - digamma(-z)?;
    Ok(front * bracket)
}

fn real(v: Complex64) -> Result<f64> {
    if v.im.abs() > 1e-10 * v.re.abs().max(1e-300) {
        return Err(Error::Numerical(format!("expected a real expectation, got {v}")));
    }
    Ok(v.re)
}

fn alpha_sum(z: Complex64, zp: Complex64, intersection: bool) -> Result<f64> {
    if !intersection {
        return real(alpha_sum_formula(z, zp)?);
    }
    // g(δ) = E(z - δ/2, z + δ/2) is even in δ; one Richardson step
    let x = z.re;
    let dist = (x - x.round()).abs();
    let delta = (1e-3f64).min(dist / 4.0);
    let g = |d: f64| -> Result<f64> {
        real(alpha_sum_formula(Complex64::new(x - d / 2.0, 0.0), Complex64::new(x + d / 2.0, 0.0))?)
    };
    Ok((4.0 * g(delta / 2.0)? - g(delta)?) / 3.0)
}

/// Expected sum of the α-coordinates under the (z, z') measure.
pub fn expected_alpha_sum(p: &SpectralParams) -> Result<f64> {
    alpha_sum(p.z, p.z_prime, p.series == Series::Intersection)
}

/// Expected sum of the β-coordinates: the α-sum at (-z, -z').
pub fn expected_beta_sum(p: &SpectralParams) -> Result<f64> {
    alpha_sum(-p.z, -p.z_prime, p.series == Series::Intersection)
}
