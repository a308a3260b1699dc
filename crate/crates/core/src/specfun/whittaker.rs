//! Whittaker's function W_{κ,μ}(x) for complex κ, μ and real x > 0.
//!
//! Uses the integral representation
//!
//! ```text
//! W_{κ,μ}(x) = e^{-x/2} x^κ / Γ(β) ∫_0^∞ e^{-t} t^{β-1} (1 + t/x)^{γ} dt,
//! β = 1/2 - κ + μ,  γ = μ + κ - 1/2,
//! ```
//!
//! on a fixed composite Gauss–Legendre grid in `t` (geometric panels from
//! 2^-60 to 2, uniform panels of width 2 beyond) plus the exact contribution
//! of `[0, 2^-60]`. The grid does not depend on `x`, so the computed value is
//! a smooth function of `x`. The representation is used only when
//! `Re β >= 1` after choosing the sign of μ (W is even in μ); otherwise the
//! value is reached through the three-term recurrence in κ
//!
//! ```text
//! W_{κ+1,μ} = (x - 2κ) W_{κ,μ} - (κ - μ - 1/2)(κ + μ - 1/2) W_{κ-1,μ}.
//! ```

use num_complex::Complex64;

use super::gamma::ln_gamma;
use super::quadrature::gauss_legendre;
use crate::{Error, Result};

pub const VALIDATED_X_MIN: f64 = 1e-6;
pub const VALIDATED_X_MAX: f64 = 50.0;
const VALIDATED_INDEX_MAX: f64 = 5.0;

const SMALL_T_EXP: i32 = -60;
const PANEL_ORDER: usize = 16;
const MIN_DIRECT_BETA: f64 = 1.0;

/// Whether (κ, μ, x) lies in the box where accuracy ≥ 1e-9 has been checked.
pub fn in_validated_box(kappa: Complex64, mu: Complex64, x: f64) -> bool {
    (VALIDATED_X_MIN..=VALIDATED_X_MAX).contains(&x)
        && kappa.norm() <= VALIDATED_INDEX_MAX
        && mu.norm() <= VALIDATED_INDEX_MAX
}

pub fn whittaker_w(kappa: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    Ok(whittaker_w_ladder(kappa, mu, x, 1)?[0])
}

/// W'_{κ,μ}(x) from the contiguous relation
/// `W' = (-1/2 + κ/x) W_{κ} + (1/2-κ+μ)(1/2-κ-μ)/x · W_{κ-1}`.
pub fn whittaker_w_prime(kappa: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    let w = whittaker_w_ladder(kappa, mu, x, 2)?;
    let c = (0.5 - kappa + mu) * (0.5 - kappa - mu);
    Ok((-0.5 + kappa / x) * w[0] + c / x * w[1])
}

/// `[W_{κ,μ}(x), W_{κ-1,μ}(x), ..., W_{κ-len+1,μ}(x)]`.
pub fn whittaker_w_ladder(
    kappa: Complex64,
    mu: Complex64,
    x: f64,
    len: usize,
) -> Result<Vec<Complex64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Whittaker W needs x > 0, got {x}")));
    }
    if len == 0 {
        return Ok(Vec::new());
    }
    // W is even in μ: use the sign that maximizes Re β.
    let mu = if (0.5 - kappa - mu).re > (0.5 - kappa + mu).re {
        -mu
    } else {
        mu
    };
    let beta0 = 0.5 - kappa + mu;
    let first_direct = if beta0.re >= MIN_DIRECT_BETA {
        0
    } else {
        (MIN_DIRECT_BETA - beta0.re).ceil() as usize
    };
    let last = (len - 1).max(first_direct + 1);
    let mut values = vec![Complex64::new(0.0, 0.0); last + 1];
    // lowest two rungs directly, the rest by upward recurrence in κ
    values[last] = integral_representation(kappa - last as f64, mu, x)?;
    values[last - 1] = integral_representation(kappa - (last - 1) as f64, mu, x)?;
    for j in (0..last - 1).rev() {
        let k = kappa - (j + 1) as f64;
        let coeff = (k - mu - 0.5) * (k + mu - 0.5);
        values[j] = (x - 2.0 * k) * values[j + 1] - coeff * values[j + 2];
    }
    values.truncate(len);
    Ok(values)
}

fn integral_representation(kappa: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    let beta = 0.5 - kappa + mu;
    let gamma = mu + kappa - 0.5;
    debug_assert!(beta.re >= MIN_DIRECT_BETA - 1e-12);
    let ln_x = x.ln();
    let log_prefactor = -0.5 * x + kappa * ln_x - ln_gamma(beta)?;

    let t0 = 2f64.powi(SMALL_T_EXP);
    // ∫_0^{t0} t^{β-1} (1 + (γ/x - 1) t) dt
    let head = (beta * t0.ln() + log_prefactor).exp()
        * (beta.inv() + (gamma / x - 1.0) * t0 / (beta + 1.0));

    let rule = gauss_legendre(PANEL_ORDER);
    let bm1 = beta - 1.0;
    let term = |t: f64| -> Complex64 {
        (bm1 * t.ln() + gamma * (t / x).ln_1p() - t + log_prefactor).exp()
    };
    let mut sum = head;
    let mut lo = t0;
    for _ in SMALL_T_EXP..1 {
        let hi = 2.0 * lo;
        for (t, w) in rule.mapped(lo, hi) {
            sum += w * term(t);
        }
        lo = hi;
    }
    let t_max = 60.0 + 2.0 * (beta + gamma).re.max(0.0);
    while lo < t_max {
        let hi = lo + 2.0;
        for (t, w) in rule.mapped(lo, hi) {
            sum += w * term(t);
        }
        lo = hi;
    }
    if !sum.re.is_finite() || !sum.im.is_finite() {
        return Err(Error::Numerical(format!(
            "W_{{{kappa},{mu}}}({x}) overflowed"
        )));
    }
    Ok(sum)
}
