use super::gamma::ln_gamma_real;
use crate::{Error, Result};

/// Generalized Laguerre polynomial L_n^α(x), normalized so that
/// L_n^α(0) = binom(n + α, n).
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::InvalidParameters(format!(
            "Laguerre parameter must exceed -1, got {alpha}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// ∫_0^∞ (L_n^α)^2 x^α e^{-x} dx = Γ(n + α + 1) / n!.
pub fn laguerre_norm_sq(n: usize, alpha: f64) -> Result<f64> {
    Ok((ln_gamma_real(n as f64 + alpha + 1.0)? - ln_gamma_real(n as f64 + 1.0)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{make_quadrature, whittaker_w, QuadratureKind};
    use num_complex::Complex64;

    #[test]
    fn low_orders() {
        assert_eq!(laguerre(0, 0.3, 5.0).unwrap(), 1.0);
        assert!((laguerre(1, 0.5, 1.0).unwrap() - 0.5).abs() < 1e-15);
        // L_2^α(x) = ((α+1)(α+2) - 2(α+2)x + x^2)/2
        let (a, x) = (-0.4, 1.5);
        let want = ((a + 1.0) * (a + 2.0) - 2.0 * (a + 2.0) * x + x * x) / 2.0;
        assert!((laguerre(2, a, x).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn orthogonality_and_norm() {
        let alpha = -0.4;
        let rule = make_quadrature(QuadratureKind::GaussLaguerre { alpha }, 20).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let v = rule.integrate(|x| laguerre(i, alpha, x).unwrap() * laguerre(j, alpha, x).unwrap());
                let want = if i == j { laguerre_norm_sq(i, alpha).unwrap() } else { 0.0 };
                assert!((v - want).abs() < 1e-11, "{i} {j} {v} {want}");
            }
        }
    }

    #[test]
    fn whittaker_terminating_identity() {
        // x^{-1/2} W_{μ+N+1/2, μ}(x) = (-1)^N N! x^μ e^{-x/2} L_N^{2μ}(x)
        let (n, mu, x) = (2usize, -0.2f64, 1.5f64);
        let w = whittaker_w(Complex64::new(mu + n as f64 + 0.5, 0.0), Complex64::new(mu, 0.0), x)
            .unwrap();
        let lhs = w.re / x.sqrt();
        let rhs = 2.0 * x.powf(mu) * (-0.5 * x).exp() * laguerre(n, 2.0 * mu, x).unwrap();
        assert!((lhs - rhs).abs() < 1e-11 * rhs.abs(), "{lhs} {rhs}");
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(laguerre(2, -1.5, 1.0).is_err());
    }
}
