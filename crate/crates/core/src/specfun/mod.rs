//! Special functions and quadrature.

mod airy;
mod bessel;
pub mod dd;
pub mod ddquad;
mod gamma;
mod hermite;
mod hyp2f1;
pub mod quad;

pub use airy::{airy, airy_ai_integral, airy_scaled, Airy};
pub use bessel::{bessel_i, bessel_i_scaled};
pub use gamma::{gamma, gamma_p, gamma_q, ln_gamma, lower_incomplete_gamma};
pub use hermite::{
    hermite_binary, hermite_extended, oscillator_wave, scale_binary_exp, ExtendedReal, WaveRecurrence,
    PI_POW_MINUS_QUARTER,
};
pub use hyp2f1::hyp2f1_regularized;
pub use quad::{integrate, integrate_pieces, quad_adaptive, QuadConfig, Quadrature};

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
