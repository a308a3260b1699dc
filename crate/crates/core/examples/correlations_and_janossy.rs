//! Correlation functions, the resolvent and Janossy densities for the sine
//! kernel on [0, 1].

use fermion::kernels::KernelSpec;
use fermion::operators::{correlation, fdd_pi, gap_probability, nystrom, resolvent_kernel, Region};

fn main() -> fermion::Result<()> {
    let spec = KernelSpec::Sine;
    let op = nystrom(&spec, &Region::interval(0.0, 1.0)?, 40)?;
    let res = resolvent_kernel(&op)?;
    println!("P(no points in [0,1]) = {:.12}", gap_probability(&op));
    for pts in [vec![0.5], vec![0.2, 0.7], vec![0.1, 0.5, 0.9]] {
        println!(
            "points {:?}: rho = {:.6e}, janossy = {:.6e}",
            pts,
            correlation(&spec, &pts)?,
            fdd_pi(&res, &pts)?
        );
    }
    // repulsion: rho_2 vanishes on the diagonal
    println!("rho_2(0.3, 0.3) = {:e}", correlation(&spec, &[0.3, 0.3])?);
    Ok(())
}
