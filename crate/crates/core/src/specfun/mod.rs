//! Special functions needed by the closed-form correlator solutions:
//! Γ and ln Γ, Bessel J/Y of real order, and the generalized hypergeometric
//! ₁F₂ along the negative real axis.
//!
//! Every evaluation carries a conservative error estimate from the path
//! actually taken; values in regions where no path certifies its target are
//! refused, never silently degraded.

mod bessel;
mod dd;
mod gamma;
mod hyp1f2;

pub use bessel::{bessel_jy, bessel_jy_full, BesselJY};
pub use gamma::{gamma_fn, ln_gamma, rgamma, sin_pi};
pub use hyp1f2::hyp1f2;

/// A computed value with a conservative error bound for the evaluation path.
#[derive(Debug, Clone, Copy)]
pub struct SpecialValue {
    pub value: f64,
    /// Conservative absolute error estimate; always >= 0.
    pub est_error: f64,
}

impl SpecialValue {
    /// Relative error estimate (absolute if the value underflows).
    pub fn rel_error(&self) -> f64 {
        self.est_error / self.value.abs().max(1e-300)
    }

    /// Cancellation flag per the series monitor: estimated error above
    /// 1e-6 of the value.
    pub fn is_flagged(&self) -> bool {
        self.rel_error() > 1e-6
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecFunError {
    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(f64),
    #[error("hypergeometric lower parameter {name} = {value} is a non-positive integer")]
    ParamPole { name: &'static str, value: f64 },
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("overflow in {0}")]
    Overflow(String),
    #[error(
        "no evaluation path certifies the target at z = {z:.3e} \
         (series error {series_est:.2e}, asymptotic error {asym_est:.2e})"
    )]
    PrecisionGap { z: f64, series_est: f64, asym_est: f64 },
}
