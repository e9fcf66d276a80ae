//! Exact finite-N one-point function of the real eigenvalues.
//!
//! With `χ_k(u) = τ^{k/2} H_k(√(N/2τ) u) / (π^{1/4} √(2^k k!))` the two
//! parts of `R_N = R¹_N + R²_N` read
//!
//! ```text
//! R¹_N(x) = √(N/2) e^{-Nx²/(1+τ)} Σ_{k=0}^{N-2} χ_k(x)²
//! R²_N(x) = N√(N-1) / (√2 (1+τ)) · χ_{N-1}(x) e^{-Nx²/(2(1+τ))}
//!           · ∫_0^x χ_{N-2}(u) e^{-Nu²/(2(1+τ))} du
//! ```
//!
//! `χ_k` obeys a recurrence in `√(N/2) u` and `τ` alone, carried with a
//! binary exponent, so no factorial, power of `τ` or Hermite value is ever
//! formed explicitly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::dd::DoubleDouble as DD;
use crate::specfun::ddquad::{gauss_legendre_24, gauss_legendre_24_antiderivative, integrate_dd_to_infinity};
use crate::specfun::{
    gamma_p, gamma_q, integrate, integrate_pieces, ln_gamma, scale_binary_exp, QuadConfig, WaveRecurrence,
};

/// A point `(N, τ)` of the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub n: usize,
    pub tau: f64,
}

impl EnsembleParams {
    pub fn new(n: usize, tau: f64) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(domain!("matrix size N = {n} must be a positive even integer"));
        }
        if !(0.0..=1.0).contains(&tau) {
            return Err(domain!("tau = {tau} must lie in [0, 1]"));
        }
        Ok(Self { n, tau })
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }
}

/// How `τ` approaches 1 in the weakly non-Hermitian regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scaling {
    /// `τ = 1 − α²/N`.
    Bulk,
    /// `τ = 1 − α²/N^{1/3}`.
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakRegimeParams {
    pub n: usize,
    pub alpha: f64,
    pub scaling: Scaling,
}

impl WeakRegimeParams {
    pub fn new(n: usize, alpha: f64, scaling: Scaling) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(domain!("alpha = {alpha} must be a nonnegative real"));
        }
        let p = Self { n, alpha, scaling };
        EnsembleParams::new(n, p.tau()).map_err(|_| match scaling {
            Scaling::Bulk => domain!("alpha^2 = {} exceeds N = {n}", alpha * alpha),
            Scaling::Edge => domain!("alpha^2 = {} exceeds N^(1/3) = {}", alpha * alpha, (n as f64).cbrt()),
        })?;
        Ok(p)
    }

    pub fn tau(&self) -> f64 {
        let a2 = self.alpha * self.alpha;
        match self.scaling {
            Scaling::Bulk => 1.0 - a2 / self.n as f64,
            Scaling::Edge => 1.0 - a2 / (self.n as f64).cbrt(),
        }
    }

    pub fn ensemble(&self) -> EnsembleParams {
        EnsembleParams {
            n: self.n,
            tau: self.tau(),
        }
    }
}

/// Lower limit of the integral representation of `R¹_N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    Point(f64),
    Infinity,
}

/// Evaluation route for `R²_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rn2Form {
    /// Quadrature of `∫_0^x`.
    Direct,
    /// Closed-form half-line integral minus `∫_x^∞`, in double-double.
    Tail,
}

fn require_positive_tau(p: &EnsembleParams, op: &str) -> Result<()> {
    if p.tau == 0.0 {
        return Err(domain!("{op}: tau = 0 is the real Ginibre case, use rn_ginoe"));
    }
    Ok(())
}

/// `(χ_{N-2}, χ_{N-1})` mantissas at `x` with their shared binary exponent.
fn chi_pair(p: &EnsembleParams, x: f64) -> (f64, f64, i64) {
    let mut r = WaveRecurrence::with_coefficients((0.5 * p.nf()).sqrt() * x, p.tau);
    r.advance_to(p.n - 1);
    let (m1, e) = r.value();
    let (m0, _) = r.previous();
    (m0, m1, e)
}

fn half_gauss(p: &EnsembleParams, x: f64) -> f64 {
    -p.nf() * x * x / (2.0 * (1.0 + p.tau))
}

/// `χ_{N-2}(u) e^{-Nu²/(2(1+τ))}`, the integrand of `R²_N`.
fn rn2_integrand(p: &EnsembleParams, u: f64) -> f64 {
    let (m0, _, e) = chi_pair(p, u);
    scale_binary_exp(m0, e, half_gauss(p, u))
}

/// `χ_{N-1}(x) e^{-Nx²/(2(1+τ))}`.
fn rn2_outer(p: &EnsembleParams, x: f64) -> f64 {
    let (_, m1, e) = chi_pair(p, x);
    scale_binary_exp(m1, e, half_gauss(p, x))
}

fn rn2_prefactor(p: &EnsembleParams) -> f64 {
    let n = p.nf();
    n * (n - 1.0).sqrt() / (std::f64::consts::SQRT_2 * (1.0 + p.tau))
}

fn rn1_prefactor(p: &EnsembleParams) -> f64 {
    2.0 * rn2_prefactor(p)
}

/// `R¹_N(x)` by direct summation of the `N − 1` positive terms.
pub fn rn1_sum(p: &EnsembleParams, x: f64) -> Result<f64> {
    require_positive_tau(p, "rn1_sum")?;
    let mut r = WaveRecurrence::with_coefficients((0.5 * p.nf()).sqrt() * x, p.tau);
    // Running sum of χ_k² as value × 2^{exp2}.
    let (mut sum, mut exp2) = (0.0f64, 0i64);
    for k in 0..=(p.n - 2) {
        if k > 0 {
            r.advance();
        }
        let (m, e) = r.value();
        let (term, te) = (m * m, 2 * e);
        if te > exp2 {
            sum = libm::ldexp(sum, (exp2 - te).max(-2000) as i32);
            exp2 = te;
        }
        sum += libm::ldexp(term, (te - exp2).max(-2000) as i32);
    }
    let g = -p.nf() * x * x / (1.0 + p.tau) + 0.5 * (0.5 * p.nf()).ln();
    Ok(scale_binary_exp(sum, exp2, g))
}

fn turning_points_between(p: &EnsembleParams, a: f64, b: f64) -> Vec<f64> {
    let tp = 2.0 * p.tau.sqrt();
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut pts = vec![a];
    let mut inner: Vec<f64> = [-tp, tp].into_iter().filter(|&t| t > lo && t < hi).collect();
    if a > b {
        inner.reverse();
    }
    pts.extend(inner);
    pts.push(b);
    pts
}

/// `R¹_N(x)` from its integral representation
/// `R¹_N(x) = R¹_N(x₀) − √2 N√(N−1)/(1+τ) ∫_{x₀}^x χ_{N−2} χ_{N−1} e^{−Nu²/(1+τ)} du`.
pub fn rn1_integral(p: &EnsembleParams, x: f64, anchor: Anchor) -> Result<f64> {
    require_positive_tau(p, "rn1_integral")?;
    let g = |u: f64| {
        let (m0, m1, e) = chi_pair(p, u);
        scale_binary_exp(m0 * m1, 2 * e, 2.0 * half_gauss(p, u))
    };
    let k = rn1_prefactor(p);
    match anchor {
        Anchor::Point(x0) => {
            let r0 = rn1_sum(p, x0)?;
            if x == x0 {
                return Ok(r0);
            }
            let cfg = QuadConfig::with_tol(1e-15 * r0.abs().max(1e-300) / k, 1e-13);
            let q = integrate_pieces(g, &turning_points_between(p, x0, x), &cfg)?;
            Ok(r0 - k * q.value)
        }
        Anchor::Infinity => {
            let ax = x.abs();
            let mut pts = turning_points_between(p, ax, ax.max(2.0 * p.tau.sqrt()) + 1.0);
            pts.pop();
            pts.push(f64::INFINITY);
            let cfg = QuadConfig::with_tol(0.0, 1e-13).panel(1.0 / p.nf().sqrt());
            let q = integrate_pieces(g, &pts, &cfg)?;
            Ok(k * q.value)
        }
    }
}

/// `∫_0^∞ χ_{N−2}(u) e^{−Nu²/(2(1+τ))} du`
/// `= (√π (1+τ)/(2N) · C(N−2, N/2−1)/2^{N−2})^{1/2}`, independent of the
/// Hermite argument scaling.
fn rn2_half_line(p: &EnsembleParams) -> DD {
    let m = p.n / 2 - 1;
    let mut central = DD::ONE;
    for j in 1..=m {
        central = central.mul_f64((2 * j - 1) as f64).div_f64((2 * j) as f64);
    }
    let scale = DD::PI.sqrt() * DD::ONE.add_f64(p.tau) / DD::from_f64(2.0 * p.nf());
    (scale * central).sqrt()
}

/// The `R²_N` integrand in double-double. `coef[k]` holds
/// `(√(2/(k+1)), √(k/(k+1)))`.
fn rn2_integrand_dd(p: &EnsembleParams, coef: &[(DD, DD)], c0: DD, u: DD) -> DD {
    let a = u * DD::from_f64(0.5 * p.nf()).sqrt();
    let b = DD::from_f64(p.tau);
    let (mut prev, mut cur, mut e2) = (DD::ZERO, c0, 0i64);
    for &(c1, c2) in coef.iter().take(p.n - 2) {
        let next = a * cur * c1 - b * prev * c2;
        prev = cur;
        cur = next;
        let big = cur.hi.abs().max(prev.hi.abs());
        if big > 1e200 {
            cur = cur.ldexp(-600);
            prev = prev.ldexp(-600);
            e2 += 600;
        } else if big < 1e-200 && big > 0.0 {
            cur = cur.ldexp(600);
            prev = prev.ldexp(600);
            e2 -= 600;
        }
    }
    let g = -(DD::from_f64(p.nf()) * u * u) / DD::ONE.add_f64(p.tau).mul_f64(2.0) + DD::LN_2.mul_f64(e2 as f64);
    if g.hi < -740.0 || cur.hi == 0.0 {
        return DD::ZERO;
    }
    cur * g.exp()
}

fn rn2_tail_inner(p: &EnsembleParams, x: f64) -> Result<f64> {
    let c = rn2_half_line(p);
    let coef: Vec<(DD, DD)> = (0..p.n)
        .map(|k| {
            let k1 = (k + 1) as f64;
            (
                DD::from_f64(2.0).div_f64(k1).sqrt(),
                DD::from_f64(k as f64).div_f64(k1).sqrt(),
            )
        })
        .collect();
    let c0 = DD::ONE / DD::PI.sqrt().sqrt();
    let f = |u: DD| rn2_integrand_dd(p, &coef, c0, u);
    let width = 0.25f64.min(4.0 / p.nf().sqrt());
    let tail = integrate_dd_to_infinity(f, DD::from_f64(x), width, 1e-28 * c.hi, 1e-40)?;
    Ok((c - tail).to_f64())
}

/// `R²_N(x)`; even in `x`.
pub fn rn2(p: &EnsembleParams, x: f64, form: Rn2Form) -> Result<f64> {
    require_positive_tau(p, "rn2")?;
    let ax = x.abs();
    if ax == 0.0 {
        return Ok(0.0);
    }
    let outer = rn2_outer(p, ax);
    if outer == 0.0 {
        return Ok(0.0);
    }
    let inner = match form {
        Rn2Form::Direct => {
            // The inner integral can cancel far below its integrand; measure
            // the error against the half-line value instead.
            let cfg = QuadConfig::with_tol(1e-15 * rn2_half_line(p).hi, 1e-13);
            integrate_pieces(|u| rn2_integrand(p, u), &turning_points_between(p, 0.0, ax), &cfg)?.value
        }
        Rn2Form::Tail => rn2_tail_inner(p, ax)?,
    };
    Ok(rn2_prefactor(p) * outer * inner)
}

/// Real Ginibre (`τ = 0`) one-point function, valid for every `N >= 1`:
/// `√(N/2π) [Q(N−1, Nx²) + √π y^{s} e^{−y} P(s, y) / Γ(s + 1/2)]` with
/// `s = (N−1)/2`, `y = Nx²/2`.
pub fn rn_ginoe(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    let lead = (nf / (2.0 * std::f64::consts::PI)).sqrt();
    if n == 1 {
        return lead * (-0.5 * x * x).exp();
    }
    let x2 = x * x;
    let q = gamma_q(nf - 1.0, nf * x2).unwrap_or(0.0);
    let s = 0.5 * (nf - 1.0);
    let y = 0.5 * nf * x2;
    let second = if y == 0.0 {
        0.0
    } else {
        let ln = 0.5 * std::f64::consts::PI.ln() + s * y.ln() - y - ln_gamma(s + 0.5);
        ln.exp() * gamma_p(s, y).unwrap_or(1.0)
    };
    lead * (q + second)
}

/// `R_N(x) = R¹_N(x) + R²_N(x)`.
pub fn rn(p: &EnsembleParams, x: f64) -> Result<f64> {
    if p.tau == 0.0 {
        return Ok(rn_ginoe(p.n, x));
    }
    Ok(rn1_sum(p, x)? + rn2(p, x, Rn2Form::Direct)?)
}

/// `R_N` on a set of points, evaluated in parallel; output order follows
/// the input.
pub fn rn_grid(p: &EnsembleParams, xs: &[f64]) -> Result<Vec<f64>> {
    xs.par_iter().map(|&x| rn(p, x)).collect()
}

/// Edge plus six edge widths plus one, widened for small `N` until the
/// Gaussian envelope `e^{-N(x-(1+τ))²/(1+τ)}` is below `e^{-40}`.
fn count_half_width(p: &EnsembleParams) -> f64 {
    let edge = 1.0 + p.tau;
    let window = edge + 6.0 * ((1.0 - p.tau * p.tau) / p.nf()).sqrt() + 1.0;
    window.max(edge + (40.0 * edge / p.nf()).sqrt())
}

/// Expected number of real eigenvalues `E_{N,τ} = ∫ R_N`.
///
/// `R²_N` needs its inner integral at every outer node, so the outer
/// integral is a composite 24-point Gauss-Legendre rule whose panels also
/// accumulate the inner integral.
pub fn expected_count_exact(p: &EnsembleParams) -> Result<f64> {
    let half = count_half_width(p);
    if p.tau == 0.0 {
        let q = integrate(|x| rn_ginoe(p.n, x), 0.0, half, &QuadConfig::with_tol(1e-12, 1e-13))?;
        return Ok(2.0 * q.value);
    }
    let rule = gauss_legendre_24();
    let anti = gauss_legendre_24_antiderivative();
    let panels = p.n + 64;
    let h = half / panels as f64;
    let r = 0.5 * h;
    let k2 = rn2_prefactor(p);
    // Per panel: the R² integrand at the nodes and the R¹ + outer factor.
    let nodes: Result<Vec<(Vec<f64>, Vec<f64>, Vec<f64>)>> = (0..panels)
        .into_par_iter()
        .map(|j| {
            let c = (j as f64 + 0.5) * h;
            let mut g = Vec::with_capacity(rule.len());
            let mut outer = Vec::with_capacity(rule.len());
            let mut r1 = Vec::with_capacity(rule.len());
            for &(x, _) in &rule {
                let u = c + r * x;
                let (m0, m1, e) = chi_pair(p, u);
                g.push(scale_binary_exp(m0, e, half_gauss(p, u)));
                outer.push(scale_binary_exp(m1, e, half_gauss(p, u)));
                r1.push(rn1_sum(p, u)?);
            }
            Ok((g, outer, r1))
        })
        .collect();
    let nodes = nodes?;
    let mut start = 0.0;
    let mut total = 0.0;
    for (g, outer, r1) in &nodes {
        for (i, &(_, w)) in rule.iter().enumerate() {
            let inner = start + r * anti[i].iter().zip(g).map(|(s, v)| s * v).sum::<f64>();
            total += r * w * (r1[i] + k2 * outer[i] * inner);
        }
        start += r * rule.iter().zip(g).map(|(&(_, w), v)| w * v).sum::<f64>();
    }
    Ok(2.0 * total)
}

/// `ρ_N(x) = R_N(x) / E_{N,τ}`.
pub fn density_normalised(p: &EnsembleParams, x: f64) -> Result<f64> {
    Ok(rn(p, x)? / expected_count_exact(p)?)
}

/// Parameters for the edge rescaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeRegime {
    /// Fixed `τ`: `√((1−τ²)/N) R_N(1+τ+√((1−τ²)/N) ξ)`.
    Strong(EnsembleParams),
    /// `τ = 1 − α²/N^{1/3}`: `N^{−2/3} R_N(1+τ+ξ/N^{2/3})`.
    Weak(WeakRegimeParams),
}

impl EdgeRegime {
    pub fn ensemble(&self) -> EnsembleParams {
        match self {
            Self::Strong(p) => *p,
            Self::Weak(w) => w.ensemble(),
        }
    }

    /// `(scale, x)` such that the rescaled density is `scale × R_N(x)`.
    pub fn map(&self, xi: f64) -> (f64, f64) {
        match self {
            Self::Strong(p) => {
                let s = ((1.0 - p.tau * p.tau) / p.nf()).sqrt();
                (s, 1.0 + p.tau + s * xi)
            }
            Self::Weak(w) => {
                let n23 = (w.n as f64).powf(2.0 / 3.0);
                (1.0 / n23, 1.0 + w.tau() + xi / n23)
            }
        }
    }
}

/// Edge-rescaled exact density. Uses the `+∞` anchor for `R¹_N` and the
/// tail form of `R²_N`.
pub fn edge_rescaled_exact(regime: &EdgeRegime, xi: f64) -> Result<f64> {
    if let EdgeRegime::Weak(w) = regime {
        if w.scaling != Scaling::Edge {
            return Err(domain!("edge rescaling needs the edge scaling tau = 1 - alpha^2/N^(1/3)"));
        }
    }
    let p = regime.ensemble();
    let (scale, x) = regime.map(xi);
    if p.tau == 0.0 {
        return Ok(scale * rn_ginoe(p.n, x));
    }
    Ok(scale * (rn1_integral(&p, x, Anchor::Infinity)? + rn2(&p, x, Rn2Form::Tail)?))
}

/// [`edge_rescaled_exact`] on a grid, in parallel.
pub fn edge_grid(regime: &EdgeRegime, xis: &[f64]) -> Result<Vec<f64>> {
    xis.par_iter().map(|&xi| edge_rescaled_exact(regime, xi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(EnsembleParams::new(3, 0.5).is_err());
        assert!(EnsembleParams::new(4, 1.5).is_err());
        assert!(WeakRegimeParams::new(8, 3.0, Scaling::Bulk).is_err());
        assert!(WeakRegimeParams::new(8, 1.0, Scaling::Edge).is_ok());
        assert!(WeakRegimeParams::new(8, 1.5, Scaling::Edge).is_err());
    }

    #[test]
    fn ginoe_two_by_two() {
        let frac_1_sqrt_pi = 0.564189583547756;
        assert!((rn_ginoe(2, 0.0) - frac_1_sqrt_pi).abs() < 1e-14);
        for &x in &[0.3, 1.2, -2.0] {
            let ax: f64 = f64::abs(x);
            let closed = frac_1_sqrt_pi * ((-2.0 * x * x).exp() + std::f64::consts::PI.sqrt() * ax * (-x * x).exp() * libm::erf(ax));
            assert!((rn_ginoe(2, x) - closed).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn half_line_constant_matches_quadrature() {
        let p = EnsembleParams::new(12, 0.4).unwrap();
        let q = integrate(|u| rn2_integrand(&p, u), 0.0, f64::INFINITY, &QuadConfig::with_tol(1e-15, 1e-13)).unwrap();
        assert!((rn2_half_line(&p).to_f64() / q.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn tau_zero_is_rejected_by_the_parts() {
        let p = EnsembleParams::new(4, 0.0).unwrap();
        assert!(rn1_sum(&p, 0.1).is_err());
        assert!(rn(&p, 0.1).is_ok());
    }
}
