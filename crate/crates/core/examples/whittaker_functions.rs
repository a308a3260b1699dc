//! Whittaker W values and derivatives on a few real and complex indices.

use fermion::specfun::{whittaker_w, whittaker_w_prime};
use fermion::Complex64;

fn main() -> fermion::Result<()> {
    let cases = [
        (Complex64::new(1.5, 0.0), Complex64::new(1.0, 0.0)),
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.3)),
        (Complex64::new(0.7, 0.0), Complex64::new(0.2, 0.0)),
    ];
    println!("{:>12} {:>12} {:>6} {:>22} {:>22}", "kappa", "mu", "x", "W", "W'");
    for (k, m) in cases {
        for x in [0.5, 2.0, 10.0] {
            let w = whittaker_w(k, m, x)?;
            let wp = whittaker_w_prime(k, m, x)?;
            println!("{:>12} {:>12} {:>6} {:>22.15e} {:>22.15e}", k, m, x, w.re, wp.re);
        }
    }
    // W_{3/2,1}(x) = x^{3/2} e^{-x/2} terminates
    let x: f64 = 2.0;
    let exact = x.powf(1.5) * (-x / 2.0).exp();
    let w = whittaker_w(Complex64::new(1.5, 0.0), Complex64::new(1.0, 0.0), x)?;
    println!("closed form check: {exact:.15} vs {:.15}", w.re);
    Ok(())
}
