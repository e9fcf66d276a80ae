//! Large-N expansions of the real-eigenvalue density and the expected
//! number of real eigenvalues, in the global and edge regimes at strong and
//! weak non-Hermiticity, with their GOE specialisations.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specfun::{airy, airy_ai_integral, airy_scaled, bessel_i_scaled, erf, integrate, QuadConfig};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Below this α the weak-regime formulas switch to their Maclaurin series.
const SMALL_ALPHA: f64 = 1e-4;

/// Order of the remainder after the two returned terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ErrorOrder {
    #[serde(rename = "exp_small")]
    ExpSmall,
    #[serde(rename = "N^-1")]
    InvN,
    #[serde(rename = "N^-1/2")]
    InvSqrtN,
    #[serde(rename = "N^-2")]
    InvNSquared,
    #[serde(rename = "N^-1/3")]
    InvCbrtN,
    #[serde(rename = "N^-2/3+eps")]
    TwoThirdsMinusEps,
}

impl ErrorOrder {
    pub fn label(self) -> &'static str {
        match self {
            ErrorOrder::ExpSmall => "exp_small",
            ErrorOrder::InvN => "N^-1",
            ErrorOrder::InvSqrtN => "N^-1/2",
            ErrorOrder::InvNSquared => "N^-2",
            ErrorOrder::InvCbrtN => "N^-1/3",
            ErrorOrder::TwoThirdsMinusEps => "N^-2/3+eps",
        }
    }
}

impl fmt::Display for ErrorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Two-term expansion. `leading` and `correction` are the N-independent
/// coefficient functions; `composite` combines them with the N-powers of
/// the theorem they come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityExpansion {
    pub leading: f64,
    pub correction: f64,
    pub error_order: ErrorOrder,
    pub composite: f64,
}

impl DensityExpansion {
    fn new(leading: f64, lead_scale: f64, correction: f64, corr_scale: f64, error_order: ErrorOrder) -> Self {
        DensityExpansion {
            leading,
            correction,
            error_order,
            composite: leading * lead_scale + correction * corr_scale,
        }
    }
}

fn check_n(n: usize) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(domain!("N must be an even integer >= 2, got {n}"));
    }
    Ok(n as f64)
}

fn check_strong_tau(tau: f64) -> Result<()> {
    if !(0.0..1.0).contains(&tau) {
        return Err(domain!("strong non-Hermiticity needs tau in [0, 1), got {tau}"));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(domain!("alpha must be finite and nonnegative, got {alpha}"));
    }
    Ok(())
}

fn check_bulk_x(x: f64) -> Result<f64> {
    if !(x.abs() < 2.0) {
        return Err(domain!("x = {x} lies outside the open support (-2, 2)"));
    }
    Ok((4.0 - x * x).sqrt())
}

/// Leading term `R⁰ₛ` of the global density at strong
/// non-Hermiticity; the correction vanishes to all polynomial orders.
pub fn global_strong(tau: f64, x: f64, n: usize) -> Result<DensityExpansion> {
    check_strong_tau(tau)?;
    let nf = check_n(n)?;
    if !(x.abs() < 1.0 + tau) {
        return Err(domain!("x = {x} lies outside the open support (-{0}, {0})", 1.0 + tau));
    }
    let lead = (1.0 / (2.0 * PI * (1.0 - tau * tau))).sqrt();
    Ok(DensityExpansion::new(lead, nf.sqrt(), 0.0, 0.0, ErrorOrder::ExpSmall))
}

/// `(1/(2α√π)) erf((α/2)√(4−x²))`, continuous at α = 0.
fn weak_profile(alpha: f64, s: f64) -> f64 {
    let z = 0.5 * alpha * s;
    if alpha < SMALL_ALPHA {
        let z2 = z * z;
        return s / (2.0 * PI) * (1.0 - z2 / 3.0 + z2 * z2 / 10.0);
    }
    erf(z) / (2.0 * alpha * SQRT_PI)
}

/// `(3α²x²+4−4α²)/(8π√(4−x²)) e^{(α²/4)(x²−4)}`.
fn weak_boundary(alpha: f64, x: f64, s: f64) -> f64 {
    let a2 = alpha * alpha;
    (3.0 * a2 * x * x + 4.0 - 4.0 * a2) / (8.0 * PI * s) * (-0.25 * a2 * s * s).exp()
}

/// Global density at weak non-Hermiticity `τ = 1 − α²/N`:
/// `R_N ≈ N R⁰_w + R¹_w`.
pub fn global_weak(alpha: f64, x: f64, n: usize) -> Result<DensityExpansion> {
    check_alpha(alpha)?;
    let nf = check_n(n)?;
    let s = check_bulk_x(x)?;
    let lead = weak_profile(alpha, s);
    let corr = alpha / (8.0 * SQRT_PI) * erf(0.5 * alpha * s) - weak_boundary(alpha, x, s);
    Ok(DensityExpansion::new(lead, nf, corr, 1.0, ErrorOrder::InvN))
}

/// Density normalised by the expected count at strong non-Hermiticity.
pub fn normalised_strong(tau: f64, x: f64, n: usize) -> Result<DensityExpansion> {
    check_strong_tau(tau)?;
    let nf = check_n(n)?;
    if !(x.abs() < 1.0 + tau) {
        return Err(domain!("x = {x} lies outside the open support (-{0}, {0})", 1.0 + tau));
    }
    let lead = 0.5 / (1.0 + tau);
    let corr = -(PI * (1.0 - tau) / (32.0 * (1.0 + tau).powi(3))).sqrt();
    Ok(DensityExpansion::new(lead, 1.0, corr, nf.powf(-0.5), ErrorOrder::InvN))
}

/// Density normalised by the expected count at weak non-Hermiticity.
pub fn normalised_weak(alpha: f64, x: f64, n: usize) -> Result<DensityExpansion> {
    check_alpha(alpha)?;
    let nf = check_n(n)?;
    let s = check_bulk_x(x)?;
    let c = c_alpha(alpha);
    let lead = weak_profile(alpha, s) / c;
    let first = if alpha < SMALL_ALPHA {
        // c α² − 4c₀ − 2 = 5α⁴/8 + O(α⁶)
        5.0 * alpha.powi(3) / (64.0 * SQRT_PI * c * c) * erf(0.5 * alpha * s)
    } else {
        (c * alpha * alpha - 4.0 * c0_alpha(alpha) - 2.0) / (8.0 * alpha * SQRT_PI * c * c) * erf(0.5 * alpha * s)
    };
    let corr = first - weak_boundary(alpha, x, s) / c;
    Ok(DensityExpansion::new(lead, 1.0, corr, 1.0 / nf, ErrorOrder::InvNSquared))
}

/// Edge density at strong non-Hermiticity in the variable
/// `x = 1 + τ + √((1−τ²)/N) ξ`.
pub fn edge_strong(tau: f64, xi: f64, n: usize) -> Result<DensityExpansion> {
    check_strong_tau(tau)?;
    let nf = check_n(n)?;
    let e = erf(xi);
    let g = (-xi * xi).exp();
    let lead = (1.0 - erf(2f64.sqrt() * xi) + g * FRAC_1_SQRT_2 * (1.0 + e)) / (2.0 * (2.0 * PI).sqrt());
    // e^{-2ξ²}(1 + e^{ξ²}√π ξ(1+erf ξ)) = e^{-2ξ²} + e^{-ξ²}√π ξ (1+erf ξ)
    let shape = g * g + g * SQRT_PI * xi * (1.0 + e);
    let corr = (1.0 - tau * tau).sqrt() / (12.0 * PI * (1.0 - tau).powi(2)) * ((1.0 + tau) * xi * xi - 3.0) * shape;
    Ok(DensityExpansion::new(lead, 1.0, corr, nf.powf(-0.5), ErrorOrder::InvN))
}

/// `Ai_α(x) = e^{α⁶/12 + α²x/2} Ai(x + α⁴/4)` and its derivative.
///
/// For `y = x + α⁴/4 > 0` the exponent combines with the decay of Ai into
/// `−(α⁶/12) g(4x/α⁴)`, `g(u) = (1+u)^{3/2} − 1 − 3u/2 ≥ 0`, which avoids
/// the cancellation between terms of size α⁶.
pub fn airy_alpha(alpha: f64, x: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let a2 = alpha * alpha;
    let a4 = a2 * a2;
    let y = x + a4 / 4.0;
    let (ai, aip, zeta) = airy_scaled(y);
    let ln_w = if y > 0.0 && alpha >= 1.0 {
        -(a4 * a2 / 12.0) * three_halves_remainder(4.0 * x / a4)
    } else {
        a4 * a2 / 12.0 + 0.5 * a2 * x - zeta
    };
    let w = ln_w.exp();
    let value = w * ai;
    let deriv = 0.5 * a2 * value + w * aip;
    if !(value.is_finite() && deriv.is_finite()) {
        return Err(Error::Overflow(format!("Ai_alpha({x}) with alpha = {alpha}")));
    }
    Ok((value, deriv))
}

/// `(1+u)^{3/2} − 1 − 3u/2` for `u > −1`.
fn three_halves_remainder(u: f64) -> f64 {
    if u.abs() >= 0.1 {
        return (1.0 + u).powf(1.5) - 1.0 - 1.5 * u;
    }
    let mut c = 0.375;
    let mut p = u * u;
    let mut sum = 0.0;
    for k in 2..40 {
        let t = c * p;
        sum += t;
        if t.abs() < 1e-17 * sum.abs() {
            break;
        }
        c *= (1.5 - k as f64) / (k as f64 + 1.0);
        p *= u;
    }
    sum
}

fn airy_alpha_value(alpha: f64, t: f64) -> f64 {
    airy_alpha(alpha, t).map(|v| v.0).unwrap_or(f64::NAN)
}

fn tail_integral<F: Fn(f64) -> f64>(f: F, xi: f64) -> Result<f64> {
    let cfg = QuadConfig::with_tol(1e-14, 1e-13).panel(2.0);
    Ok(integrate(f, xi, f64::INFINITY, &cfg)?.value)
}

/// Edge density at weak non-Hermiticity `τ = 1 − α²/N^{1/3}` in the
/// variable `x = 1 + τ + ξ/N^{2/3}`.
pub fn edge_weak(alpha: f64, xi: f64, n: usize) -> Result<DensityExpansion> {
    check_alpha(alpha)?;
    let nf = check_n(n)?;
    let (a, ap) = airy_alpha(alpha, xi)?;
    let a2 = alpha * alpha;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let sq = tail_integral(|t| airy_alpha_value(alpha, t).powi(2), xi)?;
    let lin = tail_integral(|t| airy_alpha_value(alpha, t), xi)?;
    let lead = sq + 0.5 * a * (1.0 - lin);

    let mut corr = -(a6 + 2.0 * a2 * xi + 2.0) / 8.0 * a * a;
    if alpha > 0.0 {
        let weighted = tail_integral(|t| 0.5 * (a4 * t + a2) * airy_alpha_value(alpha, t).powi(2), xi)?;
        let moment = tail_integral(|t| t * airy_alpha_value(alpha, t), xi)?;
        corr += weighted - a4 / 8.0 * a * moment;
    }
    corr += ((a4 * xi + 2.0 * a2) / 8.0 * a + (2.0 * a2 * xi + a6 + 2.0) / 8.0 * ap) * (1.0 - lin);
    Ok(DensityExpansion::new(lead, 1.0, corr, nf.powf(-1.0 / 3.0), ErrorOrder::TwoThirdsMinusEps))
}

/// GOE density normalised by N, in the bulk.
pub fn goe_bulk(x: f64, n: usize) -> Result<DensityExpansion> {
    let nf = check_n(n)?;
    let s = check_bulk_x(x)?;
    Ok(DensityExpansion::new(s / (2.0 * PI), 1.0, -1.0 / (2.0 * PI * s), 1.0 / nf, ErrorOrder::InvNSquared))
}

/// GOE edge density, with the leading term in closed form
/// `Ai'(ξ)² − ξAi(ξ)² + ½Ai(ξ)(1 − ∫_ξ^∞ Ai)`.
pub fn goe_edge(xi: f64, n: usize) -> Result<DensityExpansion> {
    let nf = check_n(n)?;
    if !xi.is_finite() {
        return Err(domain!("xi must be finite, got {xi}"));
    }
    let a = airy(xi);
    let rest = 1.0 - airy_ai_integral(xi);
    let lead = a.ai_prime * a.ai_prime - xi * a.ai * a.ai + 0.5 * a.ai * rest;
    let corr = 0.25 * (a.ai_prime * rest - a.ai * a.ai);
    Ok(DensityExpansion::new(lead, 1.0, corr, nf.powf(-1.0 / 3.0), ErrorOrder::TwoThirdsMinusEps))
}

/// `d/dξ` of the GOE edge leading term, differentiated analytically:
/// `−Ai² + ½Ai'(1 − ∫Ai) + ½Ai²`.
pub fn goe_edge_derivative(xi: f64) -> f64 {
    let a = airy(xi);
    let rest = 1.0 - airy_ai_integral(xi);
    -0.5 * a.ai * a.ai + 0.5 * a.ai_prime * rest
}

/// `c(α) = e^{−α²/2}[I₀(α²/2) + I₁(α²/2)]`.
pub fn c_alpha(alpha: f64) -> f64 {
    let w = 0.5 * alpha * alpha;
    bessel_i_scaled(0, w).unwrap_or(f64::NAN) + bessel_i_scaled(1, w).unwrap_or(f64::NAN)
}

/// `c₀(α) = −½ e^{−α²/2}[I₀(α²/2) + α² I₁(α²/2)]`.
pub fn c0_alpha(alpha: f64) -> f64 {
    let w = 0.5 * alpha * alpha;
    -0.5 * (bessel_i_scaled(0, w).unwrap_or(f64::NAN) + alpha * alpha * bessel_i_scaled(1, w).unwrap_or(f64::NAN))
}

/// `c(α) = (2/(α√π)) ∫_0^1 erf(α√(1−s²)) ds`, evaluated after `s = sin θ`.
pub fn c_alpha_integral(alpha: f64) -> f64 {
    if alpha < SMALL_ALPHA {
        return 1.0 - 0.25 * alpha * alpha;
    }
    let cfg = QuadConfig::with_tol(0.0, 1e-14);
    let q = integrate(|t: f64| erf(alpha * t.cos()) * t.cos(), 0.0, 0.5 * PI, &cfg)
        .map(|q| q.value)
        .unwrap_or(f64::NAN);
    2.0 / (alpha * SQRT_PI) * q
}

/// `E ≈ √((2/π)(1+τ)/(1−τ) N) + 1/2`.
pub fn expected_count_strong(tau: f64, n: usize) -> Result<f64> {
    check_strong_tau(tau)?;
    let nf = check_n(n)?;
    Ok((2.0 / PI * (1.0 + tau) / (1.0 - tau) * nf).sqrt() + 0.5)
}

/// `E ≈ N c(α) + c₀(α) + 1/2` at `τ = 1 − α²/N`.
pub fn expected_count_weak(alpha: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    let nf = check_n(n)?;
    Ok(nf * c_alpha(alpha) + c0_alpha(alpha) + 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_branch_meets_direct_formula() {
        let s = 3.0f64.sqrt();
        let a = SMALL_ALPHA;
        let direct = erf(0.5 * a * s) / (2.0 * a * SQRT_PI);
        assert!((weak_profile(a * 0.999_999, s) - direct).abs() < 1e-12);
        assert!((c_alpha_integral(a * 0.999_999) - c_alpha(a)).abs() < 1e-12);
    }

    #[test]
    fn remainder_branches_agree() {
        for u in [-0.1f64, 0.1] {
            let direct = (1.0 + u).powf(1.5) - 1.0 - 1.5 * u;
            let series = three_halves_remainder(u * (1.0 - 1e-15));
            assert!((direct - series).abs() < 1e-15);
        }
    }

    #[test]
    fn error_order_labels_serialise() {
        let e = ErrorOrder::TwoThirdsMinusEps;
        assert_eq!(serde_json::to_string(&e).unwrap(), "\"N^-2/3+eps\"");
        assert_eq!(e.to_string(), "N^-2/3+eps");
    }
}
