//! Gap probabilities Det(1 - K_[0,s]) of the sine process, with the
//! quadrature order doubled until the value settles.

use std::sync::Arc;

use fermion::kernels::{Kernel, KernelSpec};
use fermion::operators::{gap_probability_adaptive, Region};

fn main() -> fermion::Result<()> {
    let kernel: Arc<dyn Kernel> = Arc::new(KernelSpec::Sine);
    println!("{:>6} {:>22} {:>6} {:>10}", "s", "P(no points)", "order", "change");
    for s in [0.1, 0.5, 1.0, 2.0, 3.0] {
        let region = Region::interval(0.0, s)?;
        let c = gap_probability_adaptive(kernel.clone(), &region, None, 8, 256, 1e-12)?;
        println!("{:>6} {:>22.15} {:>6} {:>10.1e}", s, c.value, c.order, c.change);
    }
    Ok(())
}
