#![allow(dead_code)]

use std::f64::consts::PI;

use fermion::kernels::{
    admissible, fourier_khat, stationary_profile, tail_constants, Kernel, KernelSpec, SpectralParams, TailConstants,
    Variant,
};
use fermion::operators::{gap_probability, nystrom, Region};
use fermion::Complex64;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Truncated Fredholm series Σ_n c_n for det(1 - K) on [a, b], with c_n
/// from the traces of K by Newton's identities. Traces come from a midpoint
/// rule; two grids are combined by Richardson extrapolation.
pub fn fredholm_series(k: impl Fn(f64, f64) -> f64, a: f64, b: f64, terms: usize) -> f64 {
    let det = |n: usize| {
        let h = (b - a) / n as f64;
        let xs: Vec<f64> = (0..n).map(|i| a + (i as f64 + 0.5) * h).collect();
        let m = DMatrix::from_fn(n, n, |i, j| h * k(xs[i], xs[j]));
        let mut power = m.clone();
        let mut traces = vec![0.0; terms + 1];
        for t in traces.iter_mut().skip(1) {
            *t = power.trace();
            power = &power * &m;
        }
        let mut c = vec![1.0; terms + 1];
        for n in 1..=terms {
            c[n] = -(1..=n).map(|k| traces[k] * c[n - k]).sum::<f64>() / n as f64;
        }
        c.iter().sum::<f64>()
    };
    (4.0 * det(240) - det(120)) / 3.0
}

pub fn sine(x: f64, y: f64) -> f64 {
    if x == y {
        1.0
    } else {
        (PI * (x - y)).sin() / (PI * (x - y))
    }
}

// Strategies over admissible parameter pairs.

pub fn principal() -> impl Strategy<Value = SpectralParams> {
    (-1.9f64..1.9, 0.05f64..2.0).prop_map(|(a, b)| SpectralParams::new(Complex64::new(a, b), Complex64::new(a, -b)).unwrap())
}

pub fn complementary() -> impl Strategy<Value = SpectralParams> {
    (-2i32..2, 0.02f64..0.98, 0.02f64..0.98)
        .prop_filter("distinct", |(_, u, v)| (u - v).abs() > 1e-3)
        .prop_map(|(m, u, v)| SpectralParams::real(m as f64 + u, m as f64 + v).unwrap())
}

pub fn intersection() -> impl Strategy<Value = SpectralParams> {
    (-2i32..2, 0.02f64..0.98).prop_map(|(m, u)| SpectralParams::real(m as f64 + u, m as f64 + u).unwrap())
}

pub fn any_params() -> impl Strategy<Value = SpectralParams> {
    prop_oneof![principal(), complementary(), intersection()]
}

/// Parameters whose Whittaker kernel is cheap and well inside the validated range.
pub fn whittaker_params() -> impl Strategy<Value = SpectralParams> {
    prop_oneof![
        (0.05f64..0.95, 0.05f64..1.0)
            .prop_map(|(a, b)| SpectralParams::new(Complex64::new(a, b), Complex64::new(a, -b)).unwrap()),
        (0.05f64..0.95, 0.05f64..0.95)
            .prop_filter("distinct", |(u, v)| (u - v).abs() > 1e-3)
            .prop_map(|(u, v)| SpectralParams::real(u, v).unwrap()),
    ]
}

pub fn stationary() -> impl Strategy<Value = TailConstants> {
    prop_oneof![
        any_params().prop_map(|p| tail_constants(&p)),
        (PI..10.0).prop_map(|a| TailConstants::new(Variant::ShLimit, a, 0.0).unwrap()),
        (PI * PI / 2.0..20.0).prop_map(|b| TailConstants::new(Variant::RatioLimit, 0.0, b).unwrap()),
    ]
}

pub fn kernel_spec() -> impl Strategy<Value = KernelSpec> {
    prop_oneof![
        Just(KernelSpec::Sine),
        stationary().prop_map(KernelSpec::Stationary),
        whittaker_params().prop_map(KernelSpec::Whittaker),
        (1usize..6, -0.45f64..3.0).prop_map(|(n, mu)| KernelSpec::LaguerreCd { n, mu }),
    ]
}

fn point(spec: &KernelSpec, u: f64) -> f64 {
    // u in [0, 1) mapped into the kernel's domain
    match spec {
        KernelSpec::Whittaker(_) | KernelSpec::LaguerreCd { .. } => 0.05 + 6.0 * u,
        _ => -3.0 + 6.0 * u,
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)*)));
        }
    };
}

pub fn kernel_symmetry(spec: &KernelSpec, u: f64, v: f64) -> Result<(), TestCaseError> {
    let (x, y) = (point(spec, u), point(spec, v));
    let a = spec.eval(x, y).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = spec.eval(y, x).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{}: K({x},{y}) = {a}, K({y},{x}) = {b}", spec.label());
    Ok(())
}

pub fn spectrum_in_unit_interval(spec: &KernelSpec, u: f64, len: f64) -> Result<(), TestCaseError> {
    let a = point(spec, u);
    let region = Region::interval(a, a + len).unwrap();
    let op = nystrom(spec, &region, 24).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let s = op.spectrum();
    ensure!(s.min() >= -1e-8 && s.max() <= 1.0 + 1e-8, "{}: spectrum [{}, {}]", spec.label(), s.min(), s.max());
    Ok(())
}

pub fn correlations_nonnegative(spec: &KernelSpec, us: &[f64]) -> Result<(), TestCaseError> {
    let pts: Vec<f64> = us.iter().map(|&u| point(spec, u)).collect();
    let r = fermion::operators::correlation(spec, &pts).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let scale: f64 = pts.iter().map(|&x| spec.eval(x, x).unwrap_or(1.0).abs()).product();
    ensure!(r >= -1e-10 * scale.max(1e-300), "{}: rho_{} = {r:e} at {pts:?}", spec.label(), pts.len());
    Ok(())
}

pub fn rho2_vanishes_on_diagonal(spec: &KernelSpec, u: f64) -> Result<(), TestCaseError> {
    let x = point(spec, u);
    let r = fermion::operators::correlation(spec, &[x, x]).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let k = spec.eval(x, x).unwrap();
    ensure!(r.abs() <= 1e-12 * k * k + 1e-300, "{}: rho_2({x}, {x}) = {r:e}", spec.label());
    Ok(())
}

pub fn gap_monotone(spec: &KernelSpec, u: f64, inner: f64, extra: f64) -> Result<(), TestCaseError> {
    let a = point(spec, u);
    let small = nystrom(spec, &Region::interval(a, a + inner).unwrap(), 32).unwrap();
    let large = nystrom(spec, &Region::interval(a, a + inner + extra).unwrap(), 32).unwrap();
    let (g1, g2) = (gap_probability(&small), gap_probability(&large));
    ensure!(g2 <= g1 + 1e-10, "{}: gap grew from {g1} to {g2}", spec.label());
    Ok(())
}

pub fn sign_of_a_invariance(c: &TailConstants, zeta: f64, y: f64) -> Result<(), TestCaseError> {
    let flipped = TailConstants { a: -c.a, ..*c };
    let (k1, k2) = (stationary_profile(c, zeta), stationary_profile(&flipped, zeta));
    ensure!((k1 - k2).abs() <= 1e-14 * (1.0 + k1.abs()), "profile changed under A -> -A: {k1} vs {k2}");
    if let (Ok(f1), Ok(f2)) = (fourier_khat(c, y), fourier_khat(&flipped, y)) {
        ensure!((f1 - f2).abs() <= 1e-13 * (1.0 + f1.abs()), "transform changed under A -> -A: {f1} vs {f2}");
    }
    ensure!(admissible(c) == admissible(&flipped), "admissibility changed under A -> -A");
    Ok(())
}

fn same_constants(a: &TailConstants, b: &TailConstants) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + x.abs());
    a.variant == b.variant && close(a.a, b.a) && close(a.b, b.b) && close(a.c.unwrap_or(0.0), b.c.unwrap_or(0.0))
}

pub fn tail_constant_symmetries(p: &SpectralParams) -> Result<(), TestCaseError> {
    let c = tail_constants(p);
    let one = Complex64::new(1.0, 0.0);
    let shifted = SpectralParams::new(p.z + one, p.z_prime + one).unwrap();
    let negated = SpectralParams::new(-p.z, -p.z_prime).unwrap();
    ensure!(same_constants(&c, &tail_constants(&shifted)), "shift by 1 changed {c:?} to {:?}", tail_constants(&shifted));
    ensure!(same_constants(&c, &tail_constants(&negated)), "negation changed {c:?} to {:?}", tail_constants(&negated));
    Ok(())
}
