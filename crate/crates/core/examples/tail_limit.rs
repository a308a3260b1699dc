//! Rescaled two-point correlations of the Whittaker process near zero
//! approach the stationary sin/sh or sh/sh limit.

use fermion::asymptotics::{tail_convergence_check, TailGrid};
use fermion::kernels::{tail_constants, SpectralParams};
use fermion::Complex64;

fn main() -> fermion::Result<()> {
    let reps = [
        SpectralParams::new(Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5))?,
        SpectralParams::real(0.1, 0.2)?,
        SpectralParams::real(0.1, 0.1)?,
    ];
    for p in &reps {
        let c = tail_constants(p);
        println!("{:?} (z = {}, z' = {}): {:?} A = {:.4} B = {:.4}", p.series, p.z, p.z_prime, c.variant, c.a, c.b);
        for d in tail_convergence_check(p, &[1e-1, 1e-2, 1e-3], &TailGrid::default())? {
            println!("  r = {:<6} sup deviation {:.3e}", d.scale, d.deviation);
        }
    }
    Ok(())
}
