use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Series {
    /// z' = conj(z), z not real.
    Principal,
    /// z, z' real in one open unit interval (m, m+1), z != z'.
    Complementary,
    /// z = z' real and not an integer.
    Intersection,
}

/// The pair (z, z') with the derived quantities used by the Whittaker kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub z: Complex64,
    pub z_prime: Complex64,
    /// z z', real and positive.
    pub t: f64,
    /// (z + z')/2, real.
    pub a: f64,
    /// (z + z' + 1)/2.
    pub kappa: Complex64,
    /// (z - z')/2.
    pub mu: Complex64,
    pub series: Series,
}

impl SpectralParams {
    pub fn new(z: Complex64, z_prime: Complex64) -> Result<Self> {
        classify_series(z, z_prime)
    }

    pub fn real(z: f64, z_prime: f64) -> Result<Self> {
        classify_series(Complex64::new(z, 0.0), Complex64::new(z_prime, 0.0))
    }
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() <= TOL
}

pub fn classify_series(z: Complex64, z_prime: Complex64) -> Result<SpectralParams> {
    let reject = |why: &str| {
        Err(Error::InvalidParameters(format!(
            "(z, z') = ({z}, {z_prime}) {why}"
        )))
    };
    if !(z.re.is_finite() && z.im.is_finite() && z_prime.re.is_finite() && z_prime.im.is_finite())
    {
        return reject("is not finite");
    }
    let real = z.im.abs() <= TOL && z_prime.im.abs() <= TOL;
    let series = if real {
        let (x, y) = (z.re, z_prime.re);
        if is_integer(x) || is_integer(y) {
            return reject("has an integer entry");
        }
        if (x - y).abs() <= TOL {
            Series::Intersection
        } else if x.floor() == y.floor() {
            Series::Complementary
        } else {
            return reject("are real but not in one interval (m, m+1)");
        }
    } else if (z_prime - z.conj()).norm() <= TOL * (1.0 + z.norm()) {
        Series::Principal
    } else {
        return reject("match no series: need z' = conj(z) or both real in (m, m+1)");
    };
    let (z, z_prime) = match series {
        Series::Principal => (z, z.conj()),
        Series::Intersection => (Complex64::new(z.re, 0.0), Complex64::new(z.re, 0.0)),
        Series::Complementary => (Complex64::new(z.re, 0.0), Complex64::new(z_prime.re, 0.0)),
    };
    let t = (z * z_prime).re;
    Ok(SpectralParams {
        z,
        z_prime,
        t,
        a: 0.5 * (z + z_prime).re,
        kappa: 0.5 * (z + z_prime + 1.0),
        mu: 0.5 * (z - z_prime),
        series,
    })
}
