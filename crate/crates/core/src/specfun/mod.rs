//! Special functions and quadrature rules.
//!
//! Everything here is a pure function of its arguments and works in complex
//! arithmetic where the kernels need it; realness is checked by the callers.

mod gamma;
mod laguerre;
mod quadrature;
mod whittaker;

pub use gamma::{digamma, gamma, ln_gamma, ln_gamma_real, pochhammer, rgamma};
pub use laguerre::{laguerre, laguerre_norm_sq};
pub use quadrature::{
    gauss_legendre, integrate_adaptive, integrate_composite, make_quadrature, QuadratureKind,
    QuadratureRule,
};
pub use whittaker::{
    in_validated_box, whittaker_w, whittaker_w_ladder, whittaker_w_prime, VALIDATED_X_MAX,
    VALIDATED_X_MIN,
};
