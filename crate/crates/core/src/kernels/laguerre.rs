use crate::specfun::{laguerre, laguerre_norm_sq, ln_gamma_real};
use crate::{Error, Result};

fn check(n: usize, mu: f64, x: f64, y: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("Laguerre ensemble needs N >= 1".into()));
    }
    if !(2.0 * mu > -1.0) {
        return Err(Error::InvalidParameters(format!("need 2μ > -1, got μ = {mu}")));
    }
    let ok = |v: f64| v > 0.0 || (v == 0.0 && mu >= 0.0);
    if !ok(x) || !ok(y) {
        return Err(Error::Domain(format!("Laguerre kernel at ({x}, {y})")));
    }
    Ok(())
}

/// Christoffel–Darboux kernel of the N-point Laguerre ensemble with weight
/// x^{2μ} e^{-x}, as the sum over the first N orthonormal functions.
pub fn laguerre_cd_kernel(n: usize, mu: f64, x: f64, y: f64) -> Result<f64> {
    check(n, mu, x, y)?;
    let alpha = 2.0 * mu;
    let mut sum = 0.0;
    for i in 0..n {
        sum += laguerre(i, alpha, x)? * laguerre(i, alpha, y)? / laguerre_norm_sq(i, alpha)?;
    }
    Ok((x * y).powf(mu) * (-0.5 * (x + y)).exp() * sum)
}

/// Same kernel in two-term (Christoffel–Darboux ratio) form; x != y.
pub fn laguerre_cd_kernel_ratio(n: usize, mu: f64, x: f64, y: f64) -> Result<f64> {
    check(n, mu, x, y)?;
    if x == y {
        return Err(Error::Domain("ratio form is singular on the diagonal".into()));
    }
    let alpha = 2.0 * mu;
    let c = -(ln_gamma_real(n as f64 + 1.0)? - ln_gamma_real(n as f64 + alpha)?).exp();
    let num = laguerre(n, alpha, x)? * laguerre(n - 1, alpha, y)?
        - laguerre(n - 1, alpha, x)? * laguerre(n, alpha, y)?;
    Ok((x * y).powf(mu) * (-0.5 * (x + y)).exp() * c * num / (x - y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::integrate_adaptive;

    #[test]
    fn single_term() {
        assert!((laguerre_cd_kernel(1, 0.0, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let (mu, x, y) = (-0.2, 0.7, 1.9);
        let want = (x * y as f64).powf(mu) * (-0.5 * (x + y) as f64).exp()
            / ln_gamma_real(2.0 * mu + 1.0).unwrap().exp();
        assert!((laguerre_cd_kernel(1, mu, x, y).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn ratio_form_agrees() {
        let a = laguerre_cd_kernel(3, -0.2, 1.0, 2.0).unwrap();
        let b = laguerre_cd_kernel_ratio(3, -0.2, 1.0, 2.0).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} {b}");
    }

    #[test]
    fn trace_is_n() {
        let tr = integrate_adaptive(|x| laguerre_cd_kernel(2, -0.2, x, x).unwrap(), 0.0, 80.0, 1e-12, 1e-12)
            .unwrap();
        assert!((tr - 2.0).abs() < 1e-8, "{tr}");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(laguerre_cd_kernel(0, 0.0, 1.0, 1.0).is_err());
        assert!(laguerre_cd_kernel(1, -0.6, 1.0, 1.0).is_err());
        assert!(laguerre_cd_kernel(1, -0.2, 0.0, 1.0).is_err());
    }
}
