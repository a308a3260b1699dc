//! Numerical toolkit for determinantal (fermion) point processes.
//!
//! The crate evaluates the Whittaker kernel, the stationary `sin/sh` and
//! `sh/sh` kernels with their limit cases, the sine kernel and the Laguerre
//! Christoffel–Darboux kernel; discretizes restricted kernel operators to get
//! Fredholm determinants, gap probabilities and Janossy densities; samples
//! configurations exactly; and checks tail limits, counting laws of large
//! numbers, closed-form expectations and commuting Sturm–Liouville operators.
//!
//! Modules, bottom-up:
//!
//! - [`specfun`]: complex log-gamma/digamma, Whittaker `W`, Laguerre
//!   polynomials, Gauss quadrature rules.
//! - [`kernels`]: parameter classification, all kernel families, tail
//!   constants, Fourier transforms and admissibility.
//! - [`operators`]: Nyström discretization, Fredholm determinants,
//!   resolvents, correlation and Janossy functions.
//! - [`sampler`]: spectral DPP sampler, Poisson–Dirichlet sticks, gamma
//!   lifting, empirical statistics.
//! - [`asymptotics`]: expectations of the parameter sums, tail transforms and
//!   convergence, counting LLN, decay-rate estimates.
//! - [`sturm`]: commuting Sturm–Liouville operators and the commutation
//!   residual.
//! - [`cli`]: the `fermion` command-line front end.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod io;
pub mod kernels;
pub mod operators;
pub mod sampler;
pub mod specfun;
pub mod sturm;

pub use error::{Error, Result};
pub use num_complex::Complex64;
