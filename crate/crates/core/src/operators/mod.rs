//! Nyström discretization of restricted kernel operators K_A and everything
//! computed from it: Fredholm determinants, gap probabilities, the resolvent
//! L_A = K_A(1 - K_A)^{-1}, correlation functions and Janossy densities.

mod region;

use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub use region::{Region, Truncation};

use crate::kernels::{check_domain, Kernel, KernelSpec, SpectralParams};
use crate::specfun::{gauss_legendre, integrate_adaptive};
use crate::{Error, Result};

/// Eigenvalues of M may leave [0, 1] by this much before it is an error.
pub const SPECTRUM_SLACK: f64 = 1e-8;
pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending, as computed (not clipped).
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Symmetrized Nyström matrix M_ij = √w_i K(x_i, x_j) √w_j.
#[derive(Clone)]
pub struct DiscretizedOperator {
    pub region: Region,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Cell [lo, hi] around each node; cells tile the region.
    pub cells: Vec<(f64, f64)>,
    pub matrix: DMatrix<f64>,
    pub kernel: Arc<dyn Kernel>,
    spectrum: OnceLock<Spectrum>,
}

impl std::fmt::Debug for DiscretizedOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscretizedOperator")
            .field("region", &self.region)
            .field("size", &self.nodes.len())
            .finish()
    }
}

impl DiscretizedOperator {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn spectrum(&self) -> &Spectrum {
        self.spectrum.get_or_init(|| {
            if self.is_empty() {
                return Spectrum { values: Vec::new(), vectors: DMatrix::zeros(0, 0) };
            }
            let eig = SymmetricEigen::new(self.matrix.clone());
            let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
            let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
            let vectors = DMatrix::from_fn(self.len(), self.len(), |r, c| eig.eigenvectors[(r, order[c])]);
            Spectrum { values, vectors }
        })
    }

    /// Error unless the spectrum lies in [-ε, 1 + ε].
    pub fn check_spectrum(&self) -> Result<()> {
        let s = self.spectrum();
        if s.min() < -SPECTRUM_SLACK || s.max() > 1.0 + SPECTRUM_SLACK {
            return Err(Error::Spectrum(format!(
                "eigenvalues span [{:e}, {}]",
                s.min(),
                s.max()
            )));
        }
        Ok(())
    }

    /// Eigenvalues clipped to [0, 1] after `check_spectrum`.
    pub fn clipped_eigenvalues(&self) -> Result<Vec<f64>> {
        self.check_spectrum()?;
        Ok(self.spectrum().values.iter().map(|v| v.clamp(0.0, 1.0)).collect())
    }

    /// Row vector √w_j K(x, x_j).
    fn kernel_row(&self, xs: &[f64]) -> Result<DMatrix<f64>> {
        let mut g = self.kernel.gram(xs, &self.nodes)?;
        for (j, w) in self.weights.iter().enumerate() {
            g.column_mut(j).scale_mut(w.sqrt());
        }
        Ok(g)
    }
}

fn panels(region: &Region, panel_len: Option<f64>) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a, b) in &region.intervals {
        let n = match panel_len {
            Some(h) if h > 0.0 => ((b - a) / h).ceil().max(1.0) as usize,
            _ => 1,
        };
        let h = (b - a) / n as f64;
        for k in 0..n {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == n { b } else { lo + h };
            out.push((lo, hi));
        }
    }
    out
}

/// Discretize on explicit panels, `order` Gauss–Legendre points per panel.
pub fn nystrom_on_panels(
    kernel: Arc<dyn Kernel>,
    region: &Region,
    panels: &[(f64, f64)],
    order: usize,
) -> Result<DiscretizedOperator> {
    if order < 2 {
        return Err(Error::InvalidParameters("quadrature order must be >= 2".into()));
    }
    let rule = gauss_legendre(order);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut cells = Vec::new();
    for &(a, b) in panels {
        let start = nodes.len();
        for (x, w) in rule.mapped(a, b) {
            nodes.push(x);
            weights.push(w);
        }
        // cells have the Gauss weights as lengths
        let mut lo = a;
        for k in start..nodes.len() {
            let hi = if k + 1 == nodes.len() { b } else { lo + weights[k] };
            cells.push((lo, hi));
            lo = hi;
        }
    }
    check_domain(kernel.as_ref(), &nodes)?;
    let mut matrix = kernel.gram_sym(&nodes)?;
    let sw: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    for j in 0..nodes.len() {
        for i in 0..nodes.len() {
            matrix[(i, j)] *= sw[i] * sw[j];
        }
    }
    // exact symmetry
    let matrix = (&matrix + matrix.transpose()) * 0.5;
    Ok(DiscretizedOperator {
        region: region.clone(),
        nodes,
        weights,
        cells,
        matrix,
        kernel,
        spectrum: OnceLock::new(),
    })
}

/// One Gauss–Legendre rule of the given order per interval.
pub fn nystrom(spec: &KernelSpec, region: &Region, order: usize) -> Result<DiscretizedOperator> {
    nystrom_shared(Arc::new(spec.clone()), region, order, None)
}

/// Like [`nystrom`], optionally splitting intervals into panels of at most
/// `panel_len`.
pub fn nystrom_shared(
    kernel: Arc<dyn Kernel>,
    region: &Region,
    order: usize,
    panel_len: Option<f64>,
) -> Result<DiscretizedOperator> {
    nystrom_on_panels(kernel, region, &panels(region, panel_len), order)
}

/// det(I - λM).
pub fn fredholm_det(op: &DiscretizedOperator, lambda: f64) -> f64 {
    if lambda == 0.0 || op.is_empty() {
        return 1.0;
    }
    op.spectrum().values.iter().map(|v| 1.0 - lambda * v).product()
}

/// Probability that the region holds no points: Det(1 - K_A).
pub fn gap_probability(op: &DiscretizedOperator) -> f64 {
    fredholm_det(op, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Converged {
    pub value: f64,
    pub order: usize,
    /// |value(order) - value(order / 2)|.
    pub change: f64,
}

/// Gap probability with the per-panel order doubled until two successive
/// values differ by at most `tol`, or `max_order` is reached.
pub fn gap_probability_adaptive(
    kernel: Arc<dyn Kernel>,
    region: &Region,
    panels_: Option<&[(f64, f64)]>,
    start_order: usize,
    max_order: usize,
    tol: f64,
) -> Result<Converged> {
    let owned;
    let pan = match panels_ {
        Some(p) => p,
        None => {
            owned = panels(region, None);
            &owned
        }
    };
    if pan.is_empty() {
        return Ok(Converged { value: 1.0, order: start_order, change: 0.0 });
    }
    let mut order = start_order.max(2);
    let mut prev = gap_probability(&nystrom_on_panels(kernel.clone(), region, pan, order)?);
    loop {
        let next_order = order * 2;
        if next_order > max_order {
            return Ok(Converged { value: prev, order, change: f64::NAN });
        }
        let op = nystrom_on_panels(kernel.clone(), region, pan, next_order)?;
        op.check_spectrum()?;
        let v = gap_probability(&op);
        let change = (v - prev).abs();
        if change <= tol {
            return Ok(Converged { value: v, order: next_order, change });
        }
        prev = v;
        order = next_order;
    }
}

/// The resolvent L_A = K_A (1 - K_A)^{-1}.
#[derive(Debug, Clone)]
pub struct Resolvent {
    pub op: DiscretizedOperator,
    /// M (I - M)^{-1} in the symmetrized node basis.
    pub matrix: DMatrix<f64>,
    /// (I - M)^{-1}.
    inverse: DMatrix<f64>,
}

impl Resolvent {
    /// L(x, y) = K(x, y) + a_x^T (I - M)^{-1} a_y with a_x = √w K(x, nodes).
    pub fn eval_matrix(&self, points: &[f64]) -> Result<DMatrix<f64>> {
        check_domain(self.op.kernel.as_ref(), points)?;
        let k = self.op.kernel.gram_sym(points)?;
        if self.op.is_empty() {
            return Ok(k);
        }
        let a = self.op.kernel_row(points)?;
        Ok(k + &a * &self.inverse * a.transpose())
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let m = self.eval_matrix(&[x, y])?;
        Ok(m[(0, 1)])
    }
}

pub fn resolvent_kernel(op: &DiscretizedOperator) -> Result<Resolvent> {
    let s = op.spectrum();
    if s.max() > 1.0 - SPECTRUM_SLACK {
        return Err(Error::NearSingular(format!("largest eigenvalue {}", s.max())));
    }
    let n = op.len();
    let v = &s.vectors;
    let scaled = |f: &dyn Fn(f64) -> f64| {
        let d = DVector::from_iterator(n, s.values.iter().map(|&l| f(l)));
        v * DMatrix::from_diagonal(&d) * v.transpose()
    };
    Ok(Resolvent {
        op: op.clone(),
        matrix: scaled(&|l| l / (1.0 - l)),
        inverse: scaled(&|l| 1.0 / (1.0 - l)),
    })
}

/// ρ_n(x_1, ..., x_n) = det[K(x_a, x_b)].
pub fn correlation(kernel: &dyn Kernel, points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Ok(1.0);
    }
    check_domain(kernel, points)?;
    Ok(kernel.gram_sym(points)?.determinant())
}

/// Janossy density π_n(x_1..x_n) = Det(1 - K_A) det[L_A(x_a, x_b)]:
/// exactly n points in A, located at the x_a.
pub fn fdd_pi(res: &Resolvent, points: &[f64]) -> Result<f64> {
    if let Some(x) = points.iter().find(|&&x| !res.op.region.contains(x)) {
        return Err(Error::Domain(format!("point {x} outside the region")));
    }
    let det = gap_probability(&res.op);
    if points.is_empty() {
        return Ok(det);
    }
    Ok(det * res.eval_matrix(points)?.determinant())
}

/// Options for the α̃₁ distribution function.
#[derive(Debug, Clone, Copy)]
pub struct Alpha1Options {
    pub tail_trace_tol: f64,
    pub max_truncation: f64,
    pub panel_order: usize,
    pub tol: f64,
}

impl Default for Alpha1Options {
    fn default() -> Self {
        Alpha1Options { tail_trace_tol: 1e-10, max_truncation: 200.0, panel_order: 16, tol: 1e-9 }
    }
}

/// Panels on (τ, T): doubling from τ up to 1 (the kernel has a 1/x
/// diagonal at the origin), then width at most 2.
pub fn graded_panels(tau: f64, t_max: f64) -> Vec<(f64, f64)> {
    let mut breaks = vec![tau];
    let mut x = tau;
    while x < 1.0 && x < t_max {
        x = (2.0 * x).min(1.0).min(t_max);
        breaks.push(x);
    }
    while x < t_max {
        x = (x + 2.0).min(t_max);
        breaks.push(x);
    }
    breaks.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Smallest T on the grid τ + 5k with ∫_T^∞ K(x, x) dx below the tolerance,
/// and that tail trace.
pub fn truncation_point(kernel: &dyn Kernel, tau: f64, tol: f64, max_t: f64) -> Result<(f64, f64)> {
    let diag = |x: f64| kernel.eval(x, x).unwrap_or(f64::NAN);
    let mut t = tau + 5.0;
    while t <= max_t {
        // the diagonal decays like e^{-x}; 60 more units are far below f64 resolution
        let tail = integrate_adaptive(diag, t, t + 60.0, 1e-3 * tol, 1e-8)?;
        if tail.abs() < tol {
            return Ok((t, tail.abs()));
        }
        t += 5.0;
    }
    Err(Error::Truncation(format!(
        "tail trace above {tol:e} up to T = {max_t}"
    )))
}

/// P(α̃₁ < τ) = Det(1 - K_{(τ, ∞)}) for the Whittaker kernel.
pub fn alpha1_cdf(params: &SpectralParams, tau: f64) -> Result<Converged> {
    alpha1_cdf_with(params, tau, &Alpha1Options::default())
}

pub fn alpha1_cdf_with(params: &SpectralParams, tau: f64, opt: &Alpha1Options) -> Result<Converged> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("τ must be positive, got {tau}")));
    }
    let kernel: Arc<dyn Kernel> = Arc::new(KernelSpec::Whittaker(*params));
    let (t, tail) = truncation_point(kernel.as_ref(), tau, opt.tail_trace_tol, opt.max_truncation)?;
    let region = Region::truncated(tau, t, tail)?;
    let pan = graded_panels(tau, t);
    let mut c = gap_probability_adaptive(kernel, &region, Some(&pan), opt.panel_order / 2, 4 * opt.panel_order, opt.tol)?;
    c.value = c.value.clamp(0.0, 1.0);
    Ok(c)
}
