use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

/// B_{2k} / (2k (2k-1)), k = 1..9, for the Stirling series of log Γ.
const STIRLING: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
];

/// B_{2k} / 2k, k = 1..7, for the asymptotic series of ψ.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Arguments are shifted up until their real part reaches this value before
/// the asymptotic series is applied.
const SHIFT_TARGET: f64 = 15.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn shift_count(z: Complex64) -> usize {
    if z.re >= SHIFT_TARGET {
        0
    } else {
        (SHIFT_TARGET - z.re).ceil() as usize
    }
}

/// Principal branch of log Γ(z).
///
/// The branch is the analytic continuation from the positive real axis: the
/// argument is shifted by the recurrence `log Γ(z) = log Γ(z+n) - Σ log(z+k)`
/// and the Stirling series is summed at `z + n`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("{z}")));
    }
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..n {
        correction += (z + k as f64).ln();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    let stirling = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
    Ok(stirling - correction)
}

/// log |Γ(x)| for real x, with the same pole handling as [`ln_gamma`].
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re)
}

/// Γ(z).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// 1/Γ(z); entire, so poles map to zero.
pub fn rgamma(z: Complex64) -> Complex64 {
    match ln_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("{z}")));
    }
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..n {
        correction += (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv2 = (w * w).inv();
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for c in DIGAMMA_ASYMP {
        series += power * c;
        power *= inv2;
    }
    Ok(w.ln() - 0.5 * w.inv() - series - correction)
}

/// Rising factorial (t)_m = t (t+1) ... (t+m-1).
pub fn pochhammer(t: f64, m: u32) -> f64 {
    (0..m).map(|k| t + k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-13);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-13);
        assert!(half.im.abs() < 1e-15);
        // mpmath.loggamma(2+3j), 30 digits
        let v = ln_gamma(c(2.0, 3.0)).unwrap();
        let want = c(-2.092_851_753_092_733_3, 2.302_396_543_466_867_6);
        assert!((v - want).norm() / want.norm() < 1e-13, "{v}");
        // log Γ(11) = log 10!
        let ten = ln_gamma(c(11.0, 0.0)).unwrap();
        assert!((ten.re - 3_628_800f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gamma_reflection_and_sign() {
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(g.im.abs() < 1e-13);
        // Γ(z)Γ(1-z) = π / sin(πz)
        let z = c(0.3, 0.7);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / (z * PI).sin();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(ln_gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(digamma(c(-2.0, 0.0)), Err(Error::Pole(_))));
        assert_eq!(rgamma(c(-4.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn digamma_identities() {
        // ψ(1) = -γ, oracle: H_n - ln n - 1/(2n) + 1/(12 n^2) at n = 10^5
        let n = 100_000usize;
        let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let nf = n as f64;
        let euler = harmonic - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf);
        let psi1 = digamma(c(1.0, 0.0)).unwrap();
        assert!((psi1.re + euler).abs() < 1e-12);

        let a = c(2.5, 0.0);
        let step = digamma(a + 1.0).unwrap() - digamma(a).unwrap();
        assert!((step - c(0.4, 0.0)).norm() < 1e-13);

        // ψ(a) - ψ(-a) = -π ctg(πa) - 1/a
        let a = c(0.3, 0.0);
        let lhs = digamma(a).unwrap() - digamma(-a).unwrap();
        let rhs = -PI / (PI * a).tan() - a.inv();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        let z = c(0.7, -1.3);
        let h = 1e-5;
        let fd = (ln_gamma(z + h).unwrap() - ln_gamma(z - h).unwrap()) / (2.0 * h);
        assert!((fd - digamma(z).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn pochhammer_small() {
        assert_eq!(pochhammer(0.5, 0), 1.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(1.0, 4), 24.0);
    }
}
