//! Distribution function of the largest lifted coordinate for the Whittaker
//! kernel: P(largest < τ) = Det(1 - K_(τ, ∞)).

use fermion::kernels::SpectralParams;
use fermion::operators::alpha1_cdf;

fn main() -> fermion::Result<()> {
    let p = SpectralParams::real(0.25, 0.75)?;
    println!("{:>6} {:>20} {:>6}", "tau", "cdf", "order");
    for tau in [0.05, 0.2, 0.5, 1.0, 2.0, 5.0] {
        let c = alpha1_cdf(&p, tau)?;
        println!("{:>6} {:>20.12} {:>6}", tau, c.value, c.order);
    }
    Ok(())
}
