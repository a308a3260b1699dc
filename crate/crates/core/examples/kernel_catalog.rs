//! One row per kernel family: K(x, x) and K(x, y) at a fixed pair.

use std::f64::consts::PI;

use fermion::kernels::{tail_constants, Kernel, KernelSpec, SpectralParams, TailConstants, Variant};
use fermion::Complex64;

fn main() -> fermion::Result<()> {
    let principal = SpectralParams::new(Complex64::new(0.3, 0.4), Complex64::new(0.3, -0.4))?;
    let complementary = SpectralParams::real(0.25, 0.75)?;
    let specs = vec![
        KernelSpec::Sine,
        KernelSpec::Whittaker(principal),
        KernelSpec::Whittaker(complementary),
        KernelSpec::Stationary(tail_constants(&principal)),
        KernelSpec::Stationary(TailConstants::new(Variant::ShSh, PI, 2.0 * PI)?),
        KernelSpec::Stationary(TailConstants::new(Variant::ShLimit, 4.0, 0.0)?),
        KernelSpec::Stationary(TailConstants::new(Variant::RatioLimit, 0.0, PI * PI / 2.0)?),
        KernelSpec::LaguerreCd { n: 3, mu: 0.5 },
    ];
    let (x, y) = (0.8, 1.3);
    for s in &specs {
        println!("{:<60} K(x,x) = {:<22.15} K(x,y) = {:.15}", s.label(), s.eval(x, x)?, s.eval(x, y)?);
    }
    Ok(())
}
