//! Closed-form expected sums of the α and β coordinates over a few
//! parameter pairs; the two always add up to one.

use fermion::asymptotics::{expected_alpha_sum, expected_beta_sum};
use fermion::kernels::SpectralParams;
use fermion::Complex64;

fn main() -> fermion::Result<()> {
    let pairs = [
        (Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)),
        (Complex64::new(0.3, 0.4), Complex64::new(0.3, -0.4)),
        (Complex64::new(0.25, 0.0), Complex64::new(0.75, 0.0)),
        (Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)),
        (Complex64::new(-1.6, 0.0), Complex64::new(-1.1, 0.0)),
    ];
    for (z, zp) in pairs {
        let p = SpectralParams::new(z, zp)?;
        let a = expected_alpha_sum(&p)?;
        let b = expected_beta_sum(&p)?;
        println!("z = {z:<10} z' = {zp:<10} {:?}: E Σα = {a:.15}, E Σβ = {b:.15}, sum = {:.15}", p.series, a + b);
    }
    Ok(())
}
