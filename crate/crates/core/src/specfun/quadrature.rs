use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma_real;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuadratureKind {
    /// Weight 1 on [-1, 1].
    GaussLegendre,
    /// Weight x^alpha e^{-x} on (0, ∞).
    GaussLaguerre { alpha: f64 },
}

/// Nodes and weights of a Gauss rule, nodes strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
    pub order: usize,
}

impl QuadratureRule {
    /// Σ w_i f(x_i). For Laguerre rules the weight function is implicit.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Legendre nodes and weights mapped affinely onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Largest Laguerre order whose recurrences stay inside f64 range.
const MAX_LAGUERRE_ORDER: usize = 300;

pub fn make_quadrature(kind: QuadratureKind, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidParameters("quadrature order must be >= 1".into()));
    }
    let (nodes, weights) = match kind {
        QuadratureKind::GaussLegendre => legendre_rule(order),
        QuadratureKind::GaussLaguerre { alpha } => {
            if !(alpha > -1.0) {
                return Err(Error::InvalidParameters(format!(
                    "Laguerre exponent must exceed -1, got {alpha}"
                )));
            }
            if order > MAX_LAGUERRE_ORDER {
                return Err(Error::Unsupported(format!(
                    "Gauss-Laguerre order {order} > {MAX_LAGUERRE_ORDER}"
                )));
            }
            laguerre_rule(order, alpha)?
        }
    };
    Ok(QuadratureRule {
        nodes,
        weights,
        kind,
        order,
    })
}

/// Shared Gauss–Legendre rule of the given order.
pub fn gauss_legendre(order: usize) -> Arc<QuadratureRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(order.max(1))
        .or_insert_with(|| {
            Arc::new(make_quadrature(QuadratureKind::GaussLegendre, order.max(1)).unwrap())
        })
        .clone()
}

fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Golub–Welsch for the nodes, Newton polish, Christoffel-function weights.
fn laguerre_rule(n: usize, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let diag = |k: usize| 2.0 * k as f64 + alpha + 1.0;
    let off = |k: usize| (k as f64 * (k as f64 + alpha)).sqrt();
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jacobi[(k, k)] = diag(k);
        if k + 1 < n {
            jacobi[(k, k + 1)] = off(k + 1);
            jacobi[(k + 1, k)] = off(k + 1);
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let log_mass = ln_gamma_real(alpha + 1.0)?;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            // unnormalized orthonormal-recurrence value and derivative of p_n
            let (mut p_prev, mut p) = (0.0, 1.0);
            let (mut d_prev, mut d) = (0.0, 0.0);
            for k in 0..n {
                let b_next = off(k + 1);
                let b_k = if k == 0 { 0.0 } else { off(k) };
                let p_next = ((*x - diag(k)) * p - b_k * p_prev) / b_next;
                let d_next = (p + (*x - diag(k)) * d - b_k * d_prev) / b_next;
                p_prev = p;
                p = p_next;
                d_prev = d;
                d = d_next;
            }
            if d == 0.0 || !d.is_finite() {
                break;
            }
            let step = p / d;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs() {
                break;
            }
        }
        // w = 1 / Σ_{k<n} q_k(x)^2 with q_k orthonormal for x^α e^{-x}
        let mut q_prev = 0.0;
        let mut q = (-0.5 * log_mass).exp();
        let mut sum = q * q;
        for k in 0..n - 1 {
            let b_k = if k == 0 { 0.0 } else { off(k) };
            let q_next = ((*x - diag(k)) * q - b_k * q_prev) / off(k + 1);
            q_prev = q;
            q = q_next;
            sum += q * q;
        }
        weights.push(1.0 / sum);
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) || weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::Numerical(format!(
            "Gauss-Laguerre rule of order {n} lost monotonicity or positivity"
        )));
    }
    Ok((nodes, weights))
}

/// Composite Gauss–Legendre over the given breakpoints.
pub fn integrate_composite(f: impl Fn(f64) -> f64, breaks: &[f64], order: usize) -> f64 {
    let rule = gauss_legendre(order);
    breaks
        .windows(2)
        .map(|w| rule.mapped(w[0], w[1]).map(|(x, wt)| wt * f(x)).sum::<f64>())
        .sum()
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const G7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kronrod = fc * GK_WEIGHTS[7];
    let mut gauss = fc * G7_WEIGHTS[3];
    for j in 0..7 {
        let dx = half * GK_NODES[j];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += GK_WEIGHTS[j] * pair;
        if j % 2 == 1 {
            gauss += G7_WEIGHTS[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integration of f over [a, b].
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    const MAX_INTERVALS: usize = 2000;
    let (v, e) = kronrod15(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::Numerical("non-finite integrand".into()));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Numerical(format!(
                "adaptive quadrature did not converge on [{a}, {b}] (error {err:e})"
            )));
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let m = 0.5 * (lo + hi);
        let (v1, e1) = kronrod15(&f, lo, m);
        let (v2, e2) = kronrod15(&f, m, hi);
        pieces.push((lo, m, v1, e1));
        pieces.push((m, hi, v2, e2));
    }
}
