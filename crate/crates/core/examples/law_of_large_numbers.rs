//! Counting statistics N_T / T for a stationary sin/sh process, the growth
//! of ∫∫ k² over [0, τ]², and the decay rate of Poisson–Dirichlet coordinates.

use std::f64::consts::PI;
use std::sync::Arc;

use fermion::asymptotics::{counting_lln, decay_rate_estimate, square_integral};
use fermion::kernels::{KernelSpec, TailConstants, Variant};
use fermion::operators::{nystrom_shared, Region};
use fermion::sampler::{sample_dpp_many, sample_poisson_dirichlet_many, StickOptions};

fn main() -> fermion::Result<()> {
    let c = TailConstants::new(Variant::SinSh, PI, 2.0 * PI)?;
    let op = nystrom_shared(Arc::new(KernelSpec::Stationary(c)), &Region::interval(0.0, 50.0)?, 16, Some(1.0))?;
    let configs = sample_dpp_many(&op, 300, 11)?;
    for e in counting_lln(&configs, &[10.0, 25.0, 50.0])? {
        println!("T = {:>4}: N_T/T = {:.4} ± {:.4}", e.at, e.mean, e.stderr);
    }
    for tau in [25.0, 50.0, 100.0] {
        println!("tau = {tau:>5}: ∫∫k² / tau = {:.6}", square_integral(&c, tau)? / tau);
    }
    let opt = StickOptions { max_sticks: 200, residual_tol: 0.0 };
    let pd: Vec<_> = sample_poisson_dirichlet_many(1.0, &opt, 2000, 3)?
        .iter()
        .map(|s| s.to_configuration(None))
        .collect();
    let est = decay_rate_estimate(&pd, 40)?;
    for e in est.iter().filter(|e| [1.0, 10.0, 40.0].contains(&e.at)) {
        println!("j = {:>2}: mean x_j^(1/j) = {:.4} ± {:.4} (e^-1 = {:.4})", e.at, e.mean, e.stderr, (-1f64).exp());
    }
    Ok(())
}
