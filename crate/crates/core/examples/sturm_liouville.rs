//! Finite-difference check that D_x K = D_y K for the commuting
//! Sturm–Liouville operators, with a perturbed operator as contrast.

use std::f64::consts::PI;

use fermion::kernels::{KernelSpec, SpectralParams, TailConstants, Variant};
use fermion::sturm::{
    commutation_residual, off_diagonal_grid, sl_params_sine, sl_params_stationary, sl_params_whittaker, FdOptions,
    NEGATIVE_CONTROL,
};

fn main() -> fermion::Result<()> {
    let fd = FdOptions::default();
    let inner = off_diagonal_grid(-0.9, 0.9, 16, 1e-2);
    let sinsh = TailConstants::new(Variant::SinSh, PI, 2.0 * PI)?;
    let cases = vec![
        (KernelSpec::Sine, sl_params_sine(1.0)?, inner.clone()),
        (KernelSpec::Stationary(sinsh), sl_params_stationary(&sinsh, 1.0)?, inner),
    ];
    let p = SpectralParams::real(0.25, 0.75)?;
    let w = (KernelSpec::Whittaker(p), sl_params_whittaker(&p, 1.0)?, off_diagonal_grid(1.1, 5.0, 8, 1e-2));
    for (k, sl, grid) in cases.into_iter().chain([w]) {
        let matched = commutation_residual(&k, &sl, &grid, &fd)?;
        let control = commutation_residual(&k, &sl.perturbed(NEGATIVE_CONTROL), &grid, &fd)?;
        println!("{:<50} matched {:.2e}  perturbed {:.2e}", k.label(), matched, control);
    }
    Ok(())
}
