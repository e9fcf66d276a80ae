//! Regularised Gauss hypergeometric function on the Euler-integral slice.

use super::gamma::ln_gamma;
use super::quad::{integrate, QuadConfig};
use crate::error::{domain, Result};

/// `₂F₁(a, b; c; z) / Γ(c)` for `c > b > 0` and `z < 1`, from
///
/// `Γ(b) Γ(c−b) ₂F̃₁ = ∫_0^1 t^{b−1} (1−t)^{c−b−1} (1−zt)^{−a} dt`.
///
/// The integral is split at `1/2` and each half is mapped by
/// `t = u^{1/b}` (resp. `1 − t = v^{1/(c−b)}`), which removes the
/// algebraic endpoint behaviour.
pub fn hyp2f1_regularized(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(b > 0.0 && c > b) {
        return Err(domain!("hyp2f1_regularized: need c > b > 0, got b = {b}, c = {c}"));
    }
    if !(z < 1.0) {
        return Err(domain!("hyp2f1_regularized: need z < 1, got z = {z}"));
    }
    if z == 0.0 {
        return Ok((-ln_gamma(c)).exp());
    }
    let d = c - b;
    // Keep the integrand O(1) when (1 - zt)^{-a} is very large or small.
    let shift = (-a * libm::log1p(-z)).max(0.0);
    let cfg = QuadConfig::with_tol(0.0, 1e-13);
    let mid: f64 = 0.5;
    // Left half: t = u^{1/b}, so t^{b-1} dt = du / b.
    let left = integrate(
        |u: f64| {
            let t = u.powf(1.0 / b);
            ((d - 1.0) * libm::log1p(-t) - a * libm::log1p(-z * t) - shift).exp() / b
        },
        0.0,
        mid.powf(b),
        &cfg,
    )?;
    // Right half: 1 - t = v^{1/d}, so (1-t)^{d-1} dt = -dv / d.
    let right = integrate(
        |v: f64| {
            let t = 1.0 - v.powf(1.0 / d);
            ((b - 1.0) * t.ln() - a * libm::log1p(-z * t) - shift).exp() / d
        },
        0.0,
        mid.powf(d),
        &cfg,
    )?;
    let ln_norm = shift - ln_gamma(b) - ln_gamma(d);
    Ok((left.value + right.value) * ln_norm.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_at_zero() {
        let v = hyp2f1_regularized(0.3, 1.5, 4.0, 0.0).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn logarithmic_case() {
        let v = hyp2f1_regularized(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v / 1.38629436111989 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn negative_argument() {
        // ₂F₁(1, 1; 2; z) = -ln(1 - z)/z at z = -3.
        let v = hyp2f1_regularized(1.0, 1.0, 2.0, -3.0).unwrap();
        assert!((v / (4f64.ln() / 3.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_outside_slice() {
        assert!(hyp2f1_regularized(1.0, 2.0, 2.0, 0.1).is_err());
        assert!(hyp2f1_regularized(1.0, 1.0, 2.0, 1.0).is_err());
    }
}
