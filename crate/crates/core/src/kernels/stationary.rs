//! Translation-invariant kernels k(ξ - η) normalized to k(0) = 1.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::params::{Series, SpectralParams};
use crate::specfun::integrate_composite;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// B sin(Aζ) / (A sh(Bζ)).
    SinSh,
    /// B sh(Aζ) / (A sh(Bζ)).
    ShSh,
    /// sin(Aζ)/(Aζ), the B = 0 case. A = π is the sine kernel.
    ShLimit,
    /// Bζ / sh(Bζ), the A = 0 case.
    RatioLimit,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_', '/'], "").as_str() {
            "sinsh" => Ok(Variant::SinSh),
            "shsh" => Ok(Variant::ShSh),
            "shlimit" | "sine" => Ok(Variant::ShLimit),
            "ratiolimit" | "ratio" => Ok(Variant::RatioLimit),
            _ => Err(Error::InvalidParameters(format!("unknown variant '{s}'"))),
        }
    }
}

/// Constants (A, B, C) of a stationary kernel. `a` is stored as |A|.
/// `c` is the decay constant 1/(2B); it does not exist for `ShLimit`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailConstants {
    pub a: f64,
    pub b: f64,
    pub c: Option<f64>,
    pub variant: Variant,
}

impl TailConstants {
    pub fn new(variant: Variant, a: f64, b: f64) -> Result<Self> {
        let a = a.abs();
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameters("A and B must be finite".into()));
        }
        let bad = |m: &str| Err(Error::InvalidParameters(m.to_string()));
        match variant {
            Variant::SinSh | Variant::ShSh if !(b > 0.0) => return bad("B > 0 required"),
            Variant::RatioLimit if !(b > 0.0) => return bad("B > 0 required"),
            Variant::RatioLimit if a != 0.0 => return bad("RatioLimit has A = 0"),
            Variant::ShLimit if b != 0.0 => return bad("ShLimit has B = 0"),
            Variant::ShLimit if !(a > 0.0) => return bad("A > 0 required"),
            _ => {}
        }
        let c = (b > 0.0).then(|| 0.5 / b);
        Ok(TailConstants { a, b, c, variant })
    }

    /// The sine kernel sin π(ξ-η)/(π(ξ-η)).
    pub fn sine() -> Self {
        TailConstants { a: PI, b: 0.0, c: None, variant: Variant::ShLimit }
    }
}

/// (A, B, C) attached to the tail of the (z, z') process.
pub fn tail_constants(p: &SpectralParams) -> TailConstants {
    use num_complex::Complex64;
    let pi = Complex64::new(PI, 0.0);
    match p.series {
        Series::Intersection => {
            let s = (PI * p.z.re).sin();
            let b = PI * PI / (2.0 * s * s);
            TailConstants { a: 0.0, b, c: Some(0.5 / b), variant: Variant::RatioLimit }
        }
        Series::Principal | Series::Complementary => {
            let d = p.z - p.z_prime;
            let b = (pi * (pi * d).sin() / (2.0 * d * (pi * p.z).sin() * (pi * p.z_prime).sin())).re;
            let variant = if p.series == Series::Principal { Variant::SinSh } else { Variant::ShSh };
            TailConstants { a: d.norm() * b, b, c: Some(0.5 / b), variant }
        }
    }
}

/// sin(u)/u.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// ln(sh(u)/u), finite for all real u.
pub fn ln_shc(u: f64) -> f64 {
    let u = u.abs();
    if u < 1e-4 {
        let u2 = u * u;
        u2 / 6.0 - u2 * u2 / 180.0
    } else if u < 20.0 {
        (u.sinh() / u).ln()
    } else {
        u + (-(-2.0 * u).exp()).ln_1p() - (2.0 * u).ln()
    }
}

/// k(ζ) with k(0) = 1.
pub fn stationary_profile(c: &TailConstants, zeta: f64) -> f64 {
    let (a, b) = (c.a, c.b);
    match c.variant {
        Variant::SinSh => sinc(a * zeta) * (-ln_shc(b * zeta)).exp(),
        Variant::ShSh => (ln_shc(a * zeta) - ln_shc(b * zeta)).exp(),
        Variant::ShLimit => sinc(a * zeta),
        Variant::RatioLimit => (-ln_shc(b * zeta)).exp(),
    }
}

pub fn stationary_kernel(c: &TailConstants, xi: f64, eta: f64) -> f64 {
    stationary_profile(c, xi - eta)
}

/// k̂(y) = ∫ k(ζ) e^{iyζ} dζ in closed form.
pub fn fourier_khat(c: &TailConstants, y: f64) -> Result<f64> {
    let (a, b) = (c.a.abs(), c.b);
    let ratio = |b: f64| PI * PI / (b * (1.0 + (PI * y / b).cosh()));
    match c.variant {
        Variant::ShLimit => Ok(if y.abs() < a { PI / a } else if y.abs() == a { 0.5 * PI / a } else { 0.0 }),
        Variant::RatioLimit => Ok(ratio(b)),
        _ if a < 1e-12 => Ok(ratio(b)),
        Variant::SinSh => {
            let u = PI * a / b;
            let v = PI * y.abs() / b;
            // sh u / (ch u + ch v), written to avoid overflow
            let m = u.max(v);
            let num = 0.5 * ((u - m).exp() - (-u - m).exp());
            let den = 0.5 * ((u - m).exp() + (-u - m).exp() + (v - m).exp() + (-v - m).exp());
            Ok(PI / a * num / den)
        }
        Variant::ShSh => {
            if a >= b {
                return Err(Error::Domain(format!(
                    "sh/sh transform needs |A| < B, got A = {a}, B = {b}"
                )));
            }
            let u = PI * a / b;
            let v = PI * y.abs() / b;
            let num = u.sin() * (-v).exp();
            let den = u.cos() * (-v).exp() + 0.5 * (1.0 + (-2.0 * v).exp());
            Ok(PI / a * num / den)
        }
    }
}

/// k̂(y) by direct quadrature of 2∫_0^∞ k(ζ) cos(yζ) dζ.
///
/// The decaying variants are integrated on Gauss panels out to 40 decay
/// lengths. ShLimit splits into two ∫ sin(ωζ)/ζ pieces summed over half
/// periods with repeated averaging of the partial sums.
pub fn fourier_numeric(c: &TailConstants, y: f64) -> Result<f64> {
    let (a, b) = (c.a.abs(), c.b);
    if c.variant == Variant::ShLimit {
        return Ok((sine_integral_inf(a + y) + sine_integral_inf(a - y)) / a);
    }
    let rate = match c.variant {
        Variant::ShSh if a >= b => {
            return Err(Error::Domain(format!(
                "sh/sh kernel is not integrable for A = {a} ≥ B = {b}"
            )))
        }
        Variant::ShSh => b - a,
        _ => b,
    };
    let len = 40.0 / rate;
    let h = 0.5f64.min(1.0 / (y.abs() + a + b));
    let n = (len / h).ceil() as usize;
    let breaks: Vec<f64> = (0..=n).map(|k| k as f64 * len / n as f64).collect();
    Ok(2.0 * integrate_composite(|z| stationary_profile(c, z) * (y * z).cos(), &breaks, 16))
}

/// ∫_0^∞ sin(ωs)/s ds.
fn sine_integral_inf(omega: f64) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    const HALF_PERIODS: usize = 40;
    let mut partial = Vec::with_capacity(HALF_PERIODS);
    let mut acc = 0.0;
    for k in 0..HALF_PERIODS {
        let lo = k as f64 * PI;
        acc += integrate_composite(sinc, &[lo, lo + PI], 24);
        partial.push(acc);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    omega.signum() * partial[0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub ok: bool,
    pub reason: String,
}

/// Whether the stationary kernel defines a determinantal process,
/// i.e. 0 ≤ k̂ ≤ 1.
pub fn admissible(c: &TailConstants) -> Admissibility {
    // boundary cases (e.g. z + z' = 1) hit the inequalities with equality
    let le = |lhs: f64, rhs: f64| lhs <= rhs * (1.0 + 1e-12) + 1e-15;
    let (a, b) = (c.a.abs(), c.b);
    let verdict = |ok: bool, cond: &str| Admissibility {
        ok,
        reason: if ok { format!("{cond} holds") } else { format!("{cond} required") },
    };
    let ratio = |b: f64| verdict(le(PI * PI / 2.0, b), "B ≥ π²/2");
    match c.variant {
        Variant::ShLimit => verdict(le(PI, a), "A ≥ π"),
        Variant::RatioLimit => ratio(b),
        _ if a == 0.0 => ratio(b),
        Variant::SinSh => verdict(le((PI * a / (2.0 * b)).tanh(), a / PI), "th(π|A|/2B) ≤ |A|/π"),
        Variant::ShSh => {
            if a >= b {
                return verdict(false, "|A|/B < 1");
            }
            let tg = (PI * a / (2.0 * b)).tan();
            verdict(tg >= 0.0 && le(tg, a / PI), "0 ≤ tg(π|A|/2B) ≤ |A|/π")
        }
    }
}
