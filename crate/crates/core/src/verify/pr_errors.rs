//! Error measurements of the Plancherel–Rotach formulas against the exact
//! Hermite recurrence. Oscillatory errors are amplitude-normalised and taken
//! as a maximum over one local period, critical errors as a maximum over a
//! ξ grid, so that zeros of the error coefficient do not distort the rates.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::planrot::*;
use crate::specfun::{hermite_extended, integrate, QuadConfig};

fn scaled_exact(n: usize, m: i64, t: f64, gauss: f64, ln_scale: f64) -> f64 {
    hermite_extended((n as i64 + m) as usize, t).mul_exp(-gauss - ln_scale).to_f64()
}

/// `log₂(err(N)/err(2N))`.
pub fn rate(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

fn xi_grid() -> impl Iterator<Item = f64> {
    (0..=16).map(|k| -2.0 + 0.25 * k as f64)
}

/// (leading, corrected) errors of `pr_oscillatory_scaled` near `x0`.
pub fn osc_errors(n: usize, m: i64, x0: f64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let period = PI / (nf * (1.0 - x0 * x0).sqrt());
    let mut e = (0.0f64, 0.0f64);
    for k in 0..24 {
        let x = x0 + period * k as f64 / 24.0;
        let s = pr_oscillatory_scaled(n, m, x)?;
        let ex = scaled_exact(n, m, (2.0 * nf).sqrt() * x, 0.0, s.ln_scale);
        e = (e.0.max((ex - s.leading).abs()), e.1.max((ex - s.corrected).abs()));
    }
    Ok(e)
}

/// (leading, corrected) errors of `pr_oscillatory_weak` near `x0`.
pub fn osc_weak_errors(n: usize, m: i64, alpha: f64, x0: f64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let tau = 1.0 - alpha * alpha / nf;
    let period = 2.0 * PI / (nf * (1.0 - x0 * x0 / 4.0).sqrt());
    let mut e = (0.0f64, 0.0f64);
    for k in 0..24 {
        let x = x0 + period * k as f64 / 24.0;
        let s = pr_oscillatory_weak(n, m, alpha, x)?;
        let ex = scaled_exact(n, m, (nf / (2.0 * tau)).sqrt() * x, nf * x * x / (2.0 * (1.0 + tau)), s.ln_scale);
        e = (e.0.max((ex - s.leading).abs()), e.1.max((ex - s.corrected).abs()));
    }
    Ok(e)
}

/// (leading, corrected) errors of `pr_critical` over `ξ ∈ [−2, 2]`.
pub fn crit_errors(n: usize, m: i64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let mut e = (0.0f64, 0.0f64);
    for xi in xi_grid() {
        let x = 1.0 + 0.5 * xi * nf.powf(-2.0 / 3.0);
        let s = pr_critical(n, m, xi)?;
        let ex = scaled_exact(n, m, (2.0 * nf).sqrt() * x, nf * x * x, s.ln_scale);
        e = (e.0.max((ex - s.leading).abs()), e.1.max((ex - s.corrected).abs()));
    }
    Ok(e)
}

/// (leading, corrected) errors of `pr_critical_weak` over `ξ ∈ [−2, 2]`.
pub fn crit_weak_errors(n: usize, m: i64, alpha: f64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let tau = 1.0 - alpha * alpha / nf.cbrt();
    let mut e = (0.0f64, 0.0f64);
    for xi in xi_grid() {
        let x = 1.0 + tau + xi / nf.powf(2.0 / 3.0);
        let s = pr_critical_weak(n, m, alpha, xi)?;
        let ex = scaled_exact(n, m, (nf / (2.0 * tau)).sqrt() * x, nf * x * x / (2.0 * (1.0 + tau)), s.ln_scale);
        e = (e.0.max((ex - s.leading).abs()), e.1.max((ex - s.corrected).abs()));
    }
    Ok(e)
}

/// Relative error of `pr_exponential`.
pub fn exp_error(n: usize, m: i64, x: f64) -> Result<f64> {
    let a = pr_exponential(n, m, x)?;
    let ex = hermite_extended((n as i64 + m) as usize, (2.0 * n as f64).sqrt() * x);
    Ok(((ex / a).to_f64() - 1.0).abs())
}

/// (leading, corrected) errors of `pr_exponential_edge`, relative to `e^{−ξ²}`.
pub fn exp_edge_errors(n: usize, m: i64, tau: f64, xi: f64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let x = 1.0 + tau + ((1.0 - tau * tau) / nf).sqrt() * xi;
    let s = pr_exponential_edge(n, m, tau, xi)?;
    let ex = scaled_exact(n, m, (nf / (2.0 * tau)).sqrt() * x, nf * x * x / (2.0 * (1.0 + tau)), s.ln_scale);
    Ok(((ex - s.leading).abs() / s.leading, (ex - s.corrected).abs() / s.leading))
}

fn oscillatory_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: f64) -> Result<Complex64> {
    let cfg = QuadConfig::with_tol(1e-14, 1e-13);
    let re = integrate(|u| f(u) * (n * u * u).cos(), a, b, &cfg)?.value;
    let im = integrate(|u| f(u) * (n * u * u).sin(), a, b, &cfg)?.value;
    Ok(Complex64::new(re, im))
}

/// Errors of `stationary_phase_first_order` against quadrature for the
/// phase `ψ = u²` on `[1, 2]`, with amplitudes `f = u` (where the boundary
/// terms are exact) and `f = 1`.
pub fn stationary_phase_errors(n: f64) -> Result<(f64, f64)> {
    let sp = |f: fn(f64) -> f64| stationary_phase_first_order(|u| Complex64::new(f(u), 0.0), |u| u * u, |u| 2.0 * u, 1.0, 2.0, n);
    let linear = (sp(|u| u)? - oscillatory_integral(|u| u, 1.0, 2.0, n)?).norm();
    let constant = (sp(|_| 1.0)? - oscillatory_integral(|_| 1.0, 1.0, 2.0, n)?).norm();
    Ok((linear, constant))
}
