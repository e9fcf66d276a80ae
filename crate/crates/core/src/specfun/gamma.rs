//! Incomplete gamma functions.

use std::f64::consts::PI;

use crate::error::{domain, Result};

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `ln Γ(s+1) - (s+1/2) ln s + s - ln(2π)/2`, accurate for large `s`.
fn stirling_remainder(s: f64) -> f64 {
    if s >= 10.0 {
        let r = 1.0 / s;
        let r2 = r * r;
        r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))))
    } else {
        ln_gamma(s + 1.0) - (s + 0.5) * s.ln() + s - 0.5 * (2.0 * PI).ln()
    }
}

/// `ln(x^s e^{-x} / Γ(s+1))` without cancellation when `x ≈ s` is large.
fn ln_prefactor(s: f64, x: f64) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    let d = (x - s) / s;
    s * (libm::log1p(d) - d) - 0.5 * (2.0 * PI * s).ln() - stirling_remainder(s)
}

fn check(s: f64, x: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain!("incomplete gamma: s = {s} must be positive"));
    }
    if !(x >= 0.0) {
        return Err(domain!("incomplete gamma: x = {x} must be nonnegative"));
    }
    Ok(())
}

/// Sum of `x^k / ((s+1)...(s+k))`, k >= 0.
fn series(s: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut a = s;
    for _ in 0..200_000 {
        a += 1.0;
        term *= x / a;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

/// Continued fraction for `Q(s, x) Γ(s) e^{x} x^{-s}` (modified Lentz).
fn continued_fraction(s: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..200_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Regularised lower incomplete gamma `P(s, x) = γ(s, x) / Γ(s)`.
pub fn gamma_p(s: f64, x: f64) -> Result<f64> {
    check(s, x)?;
    Ok(p_q(s, x).0)
}

/// Regularised upper incomplete gamma `Q(s, x) = 1 - P(s, x)`.
pub fn gamma_q(s: f64, x: f64) -> Result<f64> {
    check(s, x)?;
    Ok(p_q(s, x).1)
}

fn p_q(s: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 1.0);
    }
    if x == f64::INFINITY {
        return (1.0, 0.0);
    }
    let lp = ln_prefactor(s, x);
    if x < s + 1.0 {
        let p = (lp.exp() * series(s, x)).min(1.0);
        (p, 1.0 - p)
    } else {
        // x^s e^{-x}/Γ(s) = s * x^s e^{-x}/Γ(s+1)
        let q = (lp.exp() * s * continued_fraction(s, x)).min(1.0);
        (1.0 - q, q)
    }
}

/// Lower incomplete gamma `γ(s, x) = ∫_0^x t^{s-1} e^{-t} dt`.
pub fn lower_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    check(s, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let lp = ln_prefactor(s, x);
    if x < s + 1.0 {
        // γ = x^s e^{-x} / s * series
        Ok((lp + ln_gamma(s + 1.0)).exp() / s * series(s, x))
    } else {
        let q = (lp.exp() * s * continued_fraction(s, x)).min(1.0);
        Ok(gamma(s) * (1.0 - q))
    }
}
