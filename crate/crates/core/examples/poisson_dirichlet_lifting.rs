//! Poisson–Dirichlet samples, their lifting by a Gamma(t) factor, and the
//! moment identity E Σ (s x)^m = (t)_m Σ x^m.

use fermion::sampler::{lift, lifted_moment, sample_poisson_dirichlet, stream_rng, PointConfiguration, StickOptions};
use fermion::specfun::pochhammer;

fn main() -> fermion::Result<()> {
    let t = 1.5;
    let pd = sample_poisson_dirichlet(t, &StickOptions::default(), 7, 0)?;
    println!("largest coordinates: {:?}", &pd.alpha[..5.min(pd.alpha.len())]);
    println!("{} sticks, unassigned mass {:.2e}", pd.truncation, pd.residual);

    let config = pd.to_configuration(None);
    let lifted = lift(&config, t, &mut stream_rng(7, 1))?;
    println!("lifted largest: {:.6}", lifted.points[0]);

    let fixed = PointConfiguration::new(vec![0.5, 0.3, 0.1], vec![(0.0, 1.0)], None)?;
    for m in [1, 2, 3] {
        let direct: f64 = fixed.points.iter().map(|x| x.powi(m as i32)).sum::<f64>() * pochhammer(t, m);
        println!("m = {m}: quadrature {:.15}  (t)_m Σx^m {:.15}", lifted_moment(&fixed, t, m)?, direct);
    }
    Ok(())
}
