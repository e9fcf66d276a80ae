//! Airy function Ai and its derivative on the real line.
//!
//! The Maclaurin series is summed in double-double arithmetic for
//! `|x| <= SWITCH`; beyond that the Poincaré expansions are used. At the
//! switch the series loses at most `e^{4/3 |x|^{3/2}}` ulps of a
//! double-double (about 1e-15 relative) while the asymptotic series has
//! its smallest term near `e^{-4/3 |x|^{3/2}}`, so both sides are well inside
//! 1e-12.

use super::dd::DoubleDouble as DD;
use super::quad::{integrate, QuadConfig};

const SWITCH: f64 = 9.5;
const AI0: DD = DD::new(0.3550280538878172, 2.05233632436212e-17);
const MINUS_AIP0: DD = DD::new(0.2588194037928068, -2.522243111610832e-17);
const FRAC_1_SQRT_PI: f64 = 0.5641895835477563;

/// `Ai(x)` and `Ai'(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Airy {
    pub ai: f64,
    pub ai_prime: f64,
    /// Set when the true values are below the smallest subnormal.
    pub underflow: bool,
}

/// Evaluates `Ai(x)` and `Ai'(x)`.
pub fn airy(x: f64) -> Airy {
    if x.is_nan() {
        return Airy {
            ai: f64::NAN,
            ai_prime: f64::NAN,
            underflow: false,
        };
    }
    if x.abs() <= SWITCH {
        let (ai, aip) = maclaurin(x);
        return Airy {
            ai: ai.to_f64(),
            ai_prime: aip.to_f64(),
            underflow: false,
        };
    }
    if x > 0.0 {
        let (ai, aip, zeta) = decaying_scaled(x);
        let w = (-zeta).exp();
        let (ai, aip) = (ai * w, aip * w);
        return Airy {
            ai,
            ai_prime: aip,
            underflow: ai == 0.0,
        };
    }
    let (ai, aip) = oscillatory(-x);
    Airy {
        ai,
        ai_prime: aip,
        underflow: false,
    }
}

/// Returns `(e^{ζ} Ai(x), e^{ζ} Ai'(x), ζ)` with `ζ = (2/3) x^{3/2}` for
/// `x > 0` and `ζ = 0` otherwise. Never underflows.
pub fn airy_scaled(x: f64) -> (f64, f64, f64) {
    if x <= 0.0 {
        let a = airy(x);
        return (a.ai, a.ai_prime, 0.0);
    }
    if x <= SWITCH {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let (ai, aip) = maclaurin(x);
        let w = zeta.exp();
        return (ai.to_f64() * w, aip.to_f64() * w, zeta);
    }
    decaying_scaled(x)
}

/// `∫_x^∞ Ai(t) dt`.
pub fn airy_ai_integral(x: f64) -> f64 {
    if x.abs() <= SWITCH {
        return (DD::from_f64(1.0 / 3.0) + DD::new(1.850371707708594e-17, 0.0) - maclaurin_integral(x)).to_f64();
    }
    let cfg = QuadConfig::with_tol(0.0, 1e-14);
    if x > 0.0 {
        return integrate(|t| airy(t).ai, x, f64::INFINITY, &cfg).map(|q| q.value).unwrap_or(0.0);
    }
    let body = integrate(|t| airy(t).ai, x, -SWITCH, &QuadConfig::with_tol(1e-16, 1e-15)).map(|q| q.value).unwrap_or(f64::NAN);
    body + airy_ai_integral(-SWITCH)
}

/// `∫_0^x Ai(t) dt` from the termwise integrated Maclaurin series.
fn maclaurin_integral(x: f64) -> DD {
    let xd = DD::from_f64(x);
    let x3 = xd * xd * xd;
    let mut t = xd;
    let mut f = xd;
    let mut s = (xd * xd).mul_f64(0.5);
    let mut g = s;
    for k in 1..400 {
        let kf = k as f64;
        // t_k = x^{3k+1} / ((3k+1) P_k), s_k = x^{3k+2} / ((3k+2) Q_k)
        t = (t * x3).mul_f64(3.0 * kf - 2.0).div_f64((3.0 * kf - 1.0) * (3.0 * kf) * (3.0 * kf + 1.0));
        s = (s * x3).mul_f64(3.0 * kf - 1.0).div_f64((3.0 * kf) * (3.0 * kf + 1.0) * (3.0 * kf + 2.0));
        f = f + t;
        g = g + s;
        if t.hi.abs().max(s.hi.abs()) < 1e-34 * f.hi.abs().max(g.hi.abs()).max(1.0) && k > 3 {
            break;
        }
    }
    AI0 * f - MINUS_AIP0 * g
}

fn maclaurin(x: f64) -> (DD, DD) {
    let xd = DD::from_f64(x);
    let x3 = xd * xd * xd;
    let small = 1e-34;
    // f = sum t_k, g = sum s_k and their derivatives.
    let mut t = DD::ONE;
    let mut f = DD::ONE;
    let mut s = xd;
    let mut g = xd;
    let mut u = (xd * xd).mul_f64(0.5);
    let mut fp = u;
    let mut v = DD::ONE;
    let mut gp = DD::ONE;
    for k in 1..400 {
        let kf = k as f64;
        t = (t * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        s = (s * x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        v = (v * x3).div_f64((3.0 * kf - 2.0) * (3.0 * kf));
        f = f + t;
        g = g + s;
        gp = gp + v;
        if k >= 2 {
            u = (u * x3).div_f64((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
            fp = fp + u;
        }
        let scale = f.hi.abs().max(g.hi.abs()).max(1.0);
        if t.hi.abs().max(s.hi.abs()).max(u.hi.abs()).max(v.hi.abs()) < small * scale && k > 3 {
            break;
        }
    }
    let ai = AI0 * f - MINUS_AIP0 * g;
    let aip = AI0 * fp - MINUS_AIP0 * gp;
    (ai, aip)
}

/// Coefficients `u_k`, `v_k` of the Airy asymptotic expansions.
fn uv_coefficients(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0; count];
    let mut v = vec![1.0; count];
    for k in 1..count {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

const TERMS: usize = 48;

fn decaying_scaled(x: f64) -> (f64, f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (u, v) = uv_coefficients(TERMS);
    let (mut su, mut sv) = (0.0, 0.0);
    let mut p = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..TERMS {
        let tu = u[k] * p;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        su += tu;
        sv += v[k] * p;
        p *= -1.0 / zeta;
    }
    let q = x.sqrt().sqrt();
    let c = 0.5 * FRAC_1_SQRT_PI;
    (c * su / q, -c * q * sv, zeta)
}

fn oscillatory(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let (u, v) = uv_coefficients(TERMS);
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    let mut p = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..TERMS {
        let tu = u[k] * p;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        // Sign pattern (-1)^{floor(k/2)} on the even and odd sub-series.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pu += sign * tu;
            pv += sign * v[k] * p;
        } else {
            qu += sign * tu;
            qv += sign * v[k] * p;
        }
        p /= zeta;
    }
    let phase = zeta - std::f64::consts::FRAC_PI_4;
    let (sn, cs) = phase.sin_cos();
    let q = z.sqrt().sqrt();
    let ai = FRAC_1_SQRT_PI / q * (cs * pu + sn * qu);
    let aip = FRAC_1_SQRT_PI * q * (sn * pv - cs * qv);
    (ai, aip)
}
