//! Exact samples of the sine process on [0, 4] and their empirical
//! one-point density and count statistics.

use fermion::kernels::KernelSpec;
use fermion::operators::{nystrom, Region};
use fermion::sampler::{empirical_statistics, sample_dpp_many};

fn main() -> fermion::Result<()> {
    let op = nystrom(&KernelSpec::Sine, &Region::interval(0.0, 4.0)?, 48)?;
    let configs = sample_dpp_many(&op, 4000, 2024)?;
    println!("first sample: {:?}", configs[0].ascending());
    let edges: Vec<f64> = (0..=8).map(|k| 0.5 * k as f64).collect();
    let st = empirical_statistics(&configs, &edges)?;
    for (k, (r, se)) in st.rho1.iter().zip(&st.rho1_se).enumerate() {
        println!("bin [{:.1}, {:.1}): rho1 = {:.4} ± {:.4}", edges[k], edges[k + 1], r, se);
    }
    // the sine process has unit density and a small count variance
    println!("count mean {:.4} (expected 4), variance {:.4}", st.count_mean, st.count_var);
    Ok(())
}
