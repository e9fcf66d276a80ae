//! Plancherel–Rotach asymptotics of Hermite polynomials `H_{N+m}` in the
//! oscillatory, critical and exponential regimes, in the plain scaling
//! `H_{N+m}(√(2N) x)` and in the elliptic scalings `H_{N+m}(√(N/2τ) x)`,
//! plus the first-order boundary-term evaluator for oscillatory integrals.
//!
//! Apart from the extended-range [`pr_oscillatory`] and [`pr_exponential`],
//! results are [`ScaledApprox`] values: the shape function only, with the
//! logarithm of the omitted prefactor alongside.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::asymptotics::airy_alpha;
use crate::error::{domain, Error, Result};
use crate::specfun::{airy, ln_gamma, ExtendedReal};

/// `φ(x) = x√(1−x²) − arccos x` on `[−1, 1]`.
pub fn phi(x: f64) -> f64 {
    x * (1.0 - x * x).sqrt() - x.acos()
}

/// `φ'(x) = 2√(1−x²)`.
pub fn phi_prime(x: f64) -> f64 {
    2.0 * (1.0 - x * x).sqrt()
}

/// `θ_m(x) = (m + 1/2) arccos x − π/4`.
pub fn theta(m: i64, x: f64) -> f64 {
    (m as f64 + 0.5) * x.acos() - FRAC_PI_4
}

/// `σ(x) = x + √(x²−1)` for `x ≥ 1`.
pub fn sigma(x: f64) -> f64 {
    x + (x * x - 1.0).sqrt()
}

/// `θ̃_m(x) = θ_m(x) − (α² x/2) φ'(x)`.
pub fn theta_tilde(m: i64, alpha: f64, x: f64) -> f64 {
    theta(m, x) - 0.5 * alpha * alpha * x * phi_prime(x)
}

/// `Θ(x) = θ̃_{−1}(x) + θ̃_{−2}(x)`.
pub fn big_theta(alpha: f64, x: f64) -> f64 {
    theta_tilde(-1, alpha, x) + theta_tilde(-2, alpha, x)
}

/// Phase functions at one point. The arccos-based entries exist on
/// `[−1, 1]`, `σ` on `|x| ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseData {
    pub phi: Option<f64>,
    pub theta_m: Option<f64>,
    pub sigma: Option<f64>,
    pub theta_tilde_m: Option<f64>,
    pub big_theta: Option<f64>,
}

impl PhaseData {
    pub fn new(m: i64, alpha: f64, x: f64) -> Self {
        let inside = x.abs() <= 1.0;
        let on = |v: f64| if inside { Some(v) } else { None };
        PhaseData {
            phi: on(phi(x)),
            theta_m: on(theta(m, x)),
            sigma: if x >= 1.0 { Some(sigma(x)) } else { None },
            theta_tilde_m: on(theta_tilde(m, alpha, x)),
            big_theta: on(big_theta(alpha, x)),
        }
    }
}

/// Shape function of an asymptotic formula, without and with its first
/// correction. The quantity approximated is
/// `corrected · e^{ln_scale}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledApprox {
    pub leading: f64,
    pub corrected: f64,
    pub ln_scale: f64,
}

/// `A_m(x)` of the oscillatory expansion.
pub fn coeff_a(m: i64, x: f64) -> f64 {
    let m = m as f64;
    ((6.0 * m * m + 6.0 * m + 1.0) * x * x - 6.0 * m * m - 12.0 * m - 4.0) / (24.0 * (1.0 - x * x))
}

/// `B_m(x)` of the oscillatory expansion.
pub fn coeff_b(m: i64, x: f64) -> f64 {
    let m = m as f64;
    let q = 12.0 * m * m + 12.0 * m;
    -((q + 2.0) * x.powi(3) - (q - 3.0) * x) / (48.0 * (1.0 - x * x).powf(1.5))
}

/// `C_m(x) = A_m(x) + ((3α²+1)α²x² − 3α⁴x⁴) / (4(1−x²))`.
///
/// The `+1` makes the corrected oscillatory formula accurate to `O(N^{−2})`;
/// with `3α² − 1` the residual keeps a term `α²x²/(2(1−x²)) cos(·) N^{−1}`.
pub fn coeff_c(m: i64, alpha: f64, x: f64) -> f64 {
    let a2 = alpha * alpha;
    let x2 = x * x;
    coeff_a(m, x) + ((3.0 * a2 + 1.0) * a2 * x2 - 3.0 * a2 * a2 * x2 * x2) / (4.0 * (1.0 - x2))
}

/// `D_m(x) = B_m(x) − ((3α²+2m+1)α²x − 4α⁴x³) / (4√(1−x²))`.
pub fn coeff_d(m: i64, alpha: f64, x: f64) -> f64 {
    let a2 = alpha * alpha;
    coeff_b(m, x) - ((3.0 * a2 + 2.0 * m as f64 + 1.0) * a2 * x - 4.0 * a2 * a2 * x.powi(3)) / (4.0 * (1.0 - x * x).sqrt())
}

fn degree(n: usize, m: i64) -> Result<f64> {
    let d = n as i64 + m;
    if n == 0 || d < 0 {
        return Err(domain!("degree N + m must be nonnegative with N >= 1, got N = {n}, m = {m}"));
    }
    Ok(d as f64)
}

/// `ln[(N+m)! e^{N/2} 2^{(N+m)/2} N^{−(N+m+1)/2} / √π]`, shared by both
/// oscillatory formulas.
fn ln_oscillatory_prefactor(nf: f64, d: f64) -> f64 {
    ln_gamma(d + 1.0) + 0.5 * nf + 0.5 * d * LN_2 - 0.5 * (d + 1.0) * nf.ln() - 0.5 * PI.ln()
}

/// Shape `h⁰ + h¹/N` of the oscillatory regime for `H_{N+m}(√(2N)x)`, with
/// `ln_scale` the log of `(1/(√π(1−x²)^{1/4}))(N+m)! e^{N/2} 2^{(N+m)/2}
/// N^{−(N+m+1)/2} e^{Nx²}`.
pub fn pr_oscillatory_scaled(n: usize, m: i64, x: f64) -> Result<ScaledApprox> {
    let d = degree(n, m)?;
    if !(x.abs() <= 0.995) {
        return Err(domain!("oscillatory regime needs |x| <= 0.995, got {x}"));
    }
    let nf = n as f64;
    let phase = nf * phi(x) - theta(m, x);
    let (s, c) = phase.sin_cos();
    let h1 = coeff_a(m, x) * c + coeff_b(m, x) * s;
    Ok(ScaledApprox {
        leading: c,
        corrected: c + h1 / nf,
        ln_scale: ln_oscillatory_prefactor(nf, d) - 0.25 * (1.0 - x * x).ln() + nf * x * x,
    })
}

fn extended(v: f64, ln_scale: f64) -> ExtendedReal {
    if v == 0.0 {
        return ExtendedReal::from_f64(0.0);
    }
    ExtendedReal::from_ln(v.signum() as i8, ln_scale + v.abs().ln())
}

/// `H_{N+m}(√(2N)x)` in the oscillatory regime, leading order and with the
/// `N^{−1}` correction.
pub fn pr_oscillatory(n: usize, m: i64, x: f64) -> Result<(ExtendedReal, ExtendedReal)> {
    let s = pr_oscillatory_scaled(n, m, x)?;
    Ok((extended(s.leading, s.ln_scale), extended(s.corrected, s.ln_scale)))
}

/// Critical regime at `x = 1 + ξ/(2N^{2/3})`: the shape
/// `Ai(ξ) − (m+1/2)Ai'(ξ)N^{−1/3}` of `e^{−Nx²}H_{N+m}(√(2N)x)`, with
/// `ln_scale` the log of `(2N)^{m/2} π^{1/4} 2^{N/2+1/4} (N!)^{1/2} N^{−1/12}`.
pub fn pr_critical(n: usize, m: i64, xi: f64) -> Result<ScaledApprox> {
    degree(n, m)?;
    let nf = n as f64;
    if !(xi.abs() <= nf.powf(1.0 / 6.0)) {
        return Err(domain!("critical window needs |xi| <= N^(1/6), got {xi}"));
    }
    let a = airy(xi);
    Ok(ScaledApprox {
        leading: a.ai,
        corrected: a.ai - (m as f64 + 0.5) * a.ai_prime * nf.powf(-1.0 / 3.0),
        ln_scale: ln_critical_prefactor(nf, m),
    })
}

fn ln_critical_prefactor(nf: f64, m: i64) -> f64 {
    0.5 * m as f64 * (2.0 * nf).ln() + 0.25 * PI.ln() + (0.5 * nf + 0.25) * LN_2 + 0.5 * ln_gamma(nf + 1.0) - nf.ln() / 12.0
}

/// `H_{N+m}(√(2N)x)` in the exponential regime `x ≥ 1.02`, leading order:
/// `(x²−1)^{−1/4} e^{−N/2} 2^{(N+m−1)/2} N^{(N+m)/2} σ^{N+m+1/2} e^{Nx/σ}`.
pub fn pr_exponential(n: usize, m: i64, x: f64) -> Result<ExtendedReal> {
    let d = degree(n, m)?;
    if !(x >= 1.02) {
        return Err(domain!("exponential regime needs x >= 1.02, got {x}"));
    }
    let nf = n as f64;
    let s = sigma(x);
    let ln = -0.25 * (x * x - 1.0).ln() - 0.5 * nf + 0.5 * (d - 1.0) * LN_2 + 0.5 * d * nf.ln()
        + (d + 0.5) * s.ln()
        + nf * x / s;
    Ok(ExtendedReal::from_ln(1, ln))
}

/// Oscillatory regime for `e^{−Nx²/(2(1+τ))}H_{N+m}(√(N/2τ)x)` at
/// `τ = 1 − α²/N`, `|x| ≤ 1.99`: shape `k⁰ + k¹/N`.
pub fn pr_oscillatory_weak(n: usize, m: i64, alpha: f64, x: f64) -> Result<ScaledApprox> {
    let d = degree(n, m)?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(domain!("alpha must be finite and nonnegative, got {alpha}"));
    }
    if !(x.abs() <= 1.99) {
        return Err(domain!("oscillatory regime needs |x| <= 1.99, got {x}"));
    }
    let nf = n as f64;
    let y = 0.5 * x;
    let phase = nf * phi(y) - theta_tilde(m, alpha, y);
    let (s, c) = phase.sin_cos();
    let k1 = coeff_c(m, alpha, y) * c + coeff_d(m, alpha, y) * s;
    Ok(ScaledApprox {
        leading: c,
        corrected: c + k1 / nf,
        ln_scale: ln_oscillatory_prefactor(nf, d) + alpha * alpha * x * x / 8.0 - 0.25 * (1.0 - y * y).ln(),
    })
}

/// `h¹_exp(ξ)` of the strong-regime edge expansion.
pub fn h1_exp(m: i64, tau: f64, xi: f64) -> f64 {
    let r = (1.0 + tau) / (1.0 - tau);
    r.powf(1.5) * xi.powi(3) / 3.0 + ((1.0 - tau) * m as f64 - tau) / (1.0 - tau) * r.sqrt() * xi
}

/// Exponential regime at `x = 1 + τ + √((1−τ²)/N) ξ` for fixed `τ`:
/// shape `e^{−ξ²}(1 + h¹_exp(ξ) N^{−1/2})` of
/// `e^{−Nx²/(2(1+τ))}H_{N+m}(√(N/2τ)x)`.
pub fn pr_exponential_edge(n: usize, m: i64, tau: f64, xi: f64) -> Result<ScaledApprox> {
    let d = degree(n, m)?;
    if !(tau > 0.0 && tau < 1.0) {
        return Err(domain!("tau must lie in (0, 1), got {tau}"));
    }
    if !xi.is_finite() {
        return Err(domain!("xi must be finite, got {xi}"));
    }
    let nf = n as f64;
    let g = (-xi * xi).exp();
    Ok(ScaledApprox {
        leading: g,
        corrected: g * (1.0 + h1_exp(m, tau, xi) / nf.sqrt()),
        ln_scale: 0.5 * m as f64 - 0.5 * (1.0 - tau).ln() + 0.5 * d * (2.0 * nf / (std::f64::consts::E * tau)).ln(),
    })
}

/// `𝒜_m(t) = (2α⁴t + α⁸ + (4m+2)α²)/8`.
pub fn coeff_script_a(m: i64, alpha: f64, t: f64) -> f64 {
    let a2 = alpha * alpha;
    (2.0 * a2 * a2 * t + a2.powi(4) + (4.0 * m as f64 + 2.0) * a2) / 8.0
}

/// `ℬ_m(t) = (2α²t + α⁶ − 4m − 2)/4`.
pub fn coeff_script_b(m: i64, alpha: f64, t: f64) -> f64 {
    let a2 = alpha * alpha;
    (2.0 * a2 * t + a2 * a2 * a2 - 4.0 * m as f64 - 2.0) / 4.0
}

/// Critical regime at `τ = 1 − α²/N^{1/3}`, `x = 1 + τ + ξ/N^{2/3}`:
/// shape `Ai_α(ξ) + (𝒜_m Ai_α + ℬ_m Ai'_α)N^{−1/3}` of
/// `e^{−Nx²/(2(1+τ))}H_{N+m}(√(N/2τ)x)`.
pub fn pr_critical_weak(n: usize, m: i64, alpha: f64, xi: f64) -> Result<ScaledApprox> {
    degree(n, m)?;
    let nf = n as f64;
    if !(xi.abs() <= nf.powf(0.6)) {
        return Err(domain!("critical window needs |xi| <= N^0.6, got {xi}"));
    }
    let (a, ap) = airy_alpha(alpha, xi)?;
    let c = nf.powf(1.0 / 3.0);
    let a2 = alpha * alpha;
    Ok(ScaledApprox {
        leading: a,
        corrected: a + (coeff_script_a(m, alpha, xi) * a + coeff_script_b(m, alpha, xi) * ap) / c,
        ln_scale: ln_critical_prefactor(nf, m) + 0.5 * a2 * c * c + 0.25 * a2 * a2 * c + a2 * a2 * a2 / 6.0,
    })
}

/// Number of points at which `ψ'` is sampled for a sign change.
const CRITICAL_SAMPLES: usize = 64;

/// `∫_a^b f(u) e^{iNψ(u)} du ≈ i(f(a)/ψ'(a) e^{iNψ(a)} − f(b)/ψ'(b) e^{iNψ(b)})/N`,
/// valid when `ψ'` has no zero on `[a, b]`.
pub fn stationary_phase_first_order<F, P, D>(f: F, psi: P, dpsi: D, a: f64, b: f64, n: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(n > 0.0) {
        return Err(domain!("N must be positive, got {n}"));
    }
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d0 = dpsi(a);
    for k in 0..CRITICAL_SAMPLES {
        let u = a + (b - a) * k as f64 / (CRITICAL_SAMPLES - 1) as f64;
        let d = dpsi(u);
        if d == 0.0 || d.signum() != d0.signum() || !d.is_finite() {
            return Err(Error::CriticalPoint(u));
        }
    }
    let term = |u: f64| f(u) / dpsi(u) * Complex64::from_polar(1.0, n * psi(u));
    Ok(Complex64::i() * (term(a) - term(b)) / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_at_origin() {
        assert!((coeff_a(0, 0.0) + 1.0 / 6.0).abs() < 1e-16);
        assert_eq!(coeff_b(0, 0.0), 0.0);
        assert!((coeff_script_b(0, 1.0, 0.0) + 0.25).abs() < 1e-16);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1.25), 2.0);
        assert_eq!(sigma(1.0), 1.0);
    }
}
