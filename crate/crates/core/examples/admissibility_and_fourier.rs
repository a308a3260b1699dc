//! Admissibility of tail constants and the closed-form Fourier transforms
//! compared with direct quadrature.

use std::f64::consts::PI;

use fermion::kernels::{admissible, fourier_khat, fourier_numeric, tail_constants, SpectralParams, TailConstants, Variant};

fn main() -> fermion::Result<()> {
    let cases = [
        tail_constants(&SpectralParams::real(0.25, 0.75)?),
        tail_constants(&SpectralParams::real(0.5, 0.5)?),
        TailConstants::new(Variant::SinSh, PI, 2.0 * PI)?,
        TailConstants::new(Variant::ShLimit, 3.0, 0.0)?,
        TailConstants::new(Variant::RatioLimit, 0.0, 4.0)?,
    ];
    for c in &cases {
        let v = admissible(c);
        let worst = (0..=40)
            .map(|k| -10.0 + 0.5 * k as f64)
            .map(|y| Ok((fourier_khat(c, y)? - fourier_numeric(c, y)?).abs()))
            .collect::<fermion::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("{:?} A = {:.4} B = {:.4}: admissible = {} ({}), max |k̂ - numeric| = {:.1e}", c.variant, c.a, c.b, v.ok, v.reason, worst);
    }
    Ok(())
}
