//! Adaptive Gauss-Legendre quadrature in double-double arithmetic.
//!
//! Used where an integral is recovered as the difference of two nearly
//! equal quantities and ordinary double precision cannot resolve it.

use std::sync::OnceLock;

use super::dd::DoubleDouble as DD;
use crate::error::{Error, Result};

const DEGREE: usize = 24;
const MAX_DEPTH: u32 = 40;

struct Rule {
    nodes: Vec<DD>,
    weights: Vec<DD>,
}

fn legendre(n: usize, x: DD) -> (DD, DD) {
    // Returns (P_n(x), P_{n-1}(x)).
    let mut p0 = DD::ONE;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = (x * p1).mul_f64(2.0 * kf + 1.0) - p0.mul_f64(kf);
        let p2 = p2.div_f64(kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = DEGREE;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = DD::from_f64(guess);
            let mut dp = DD::ONE;
            for _ in 0..8 {
                let (p, q) = legendre(n, x);
                // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
                let x2m1 = x * x - DD::ONE;
                dp = (x * p - q).mul_f64(n as f64) / x2m1;
                x = x - p / dp;
            }
            let one_minus = DD::ONE - x * x;
            nodes.push(x);
            weights.push(DD::from_f64(2.0) / (one_minus * dp * dp));
        }
        Rule { nodes, weights }
    })
}

/// Nodes and weights of the 24-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_24() -> Vec<(f64, f64)> {
    let r = rule();
    r.nodes.iter().zip(&r.weights).map(|(x, w)| (x.to_f64(), w.to_f64())).collect()
}

/// Spectral integration matrix `S` for the 24-point rule on `[-1, 1]`:
/// `Σ_j S[i][j] f(x_j)` is the integral from `-1` to `x_i` of the degree-23
/// interpolant of `f`.
pub fn gauss_legendre_24_antiderivative() -> Vec<Vec<f64>> {
    let r = rule();
    let xs: Vec<DD> = r.nodes.clone();
    // P_k at every node, k = 0..=DEGREE.
    let table: Vec<Vec<DD>> = xs
        .iter()
        .map(|&x| {
            let mut p = vec![DD::ONE, x];
            for k in 1..DEGREE {
                let kf = k as f64;
                let next = ((x * p[k]).mul_f64(2.0 * kf + 1.0) - p[k - 1].mul_f64(kf)).div_f64(kf + 1.0);
                p.push(next);
            }
            p
        })
        .collect();
    (0..DEGREE)
        .map(|i| {
            (0..DEGREE)
                .map(|j| {
                    // ℓ_j = w_j Σ_k (2k+1)/2 P_k(x_j) P_k and ∫_{-1}^x P_k = (P_{k+1} − P_{k−1})/(2k+1).
                    let mut acc = (xs[i] + DD::ONE).mul_f64(0.5);
                    for k in 1..DEGREE {
                        acc = acc + (table[j][k] * (table[i][k + 1] - table[i][k - 1])).mul_f64(0.5);
                    }
                    (r.weights[j] * acc).to_f64()
                })
                .collect()
        })
        .collect()
}

/// One panel: integral estimate and largest `|f|` at the nodes.
fn panel<F: Fn(DD) -> DD>(f: &F, a: DD, b: DD) -> (DD, f64) {
    let r = rule();
    let c = (a + b).mul_f64(0.5);
    let h = (b - a).mul_f64(0.5);
    let mut sum = DD::ZERO;
    let mut maxabs = 0.0f64;
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        let v = f(c + h * *x);
        maxabs = maxabs.max(v.hi.abs());
        sum = sum + *w * v;
    }
    (h * sum, maxabs)
}

fn recurse<F: Fn(DD) -> DD>(f: &F, a: DD, b: DD, whole: DD, tol: f64, depth: u32, maxabs: &mut f64) -> Result<DD> {
    let m = (a + b).mul_f64(0.5);
    let (l, ml) = panel(f, a, m);
    let (r, mr) = panel(f, m, b);
    *maxabs = maxabs.max(ml).max(mr);
    let both = l + r;
    let diff = (both - whole).to_f64().abs();
    if diff <= tol {
        return Ok(both);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature {
            estimate: both.to_f64(),
            error: diff,
            intervals: 1 << depth.min(30),
        });
    }
    let l = recurse(f, a, m, l, 0.5 * tol, depth + 1, maxabs)?;
    let r = recurse(f, m, b, r, 0.5 * tol, depth + 1, maxabs)?;
    Ok(l + r)
}

/// `∫_a^b f` to absolute tolerance `tol` (which may be far below `1e-16`
/// times the integral). Returns the value and the largest `|f|` sampled.
pub fn integrate_dd<F: Fn(DD) -> DD>(f: F, a: DD, b: DD, tol: f64) -> Result<(DD, f64)> {
    let (whole, mut maxabs) = panel(&f, a, b);
    let v = recurse(&f, a, b, whole, tol, 0, &mut maxabs)?;
    Ok((v, maxabs))
}

/// `∫_a^∞ f` by panels of doubling width starting at `width`, stopping
/// once the integrand has fallen below `cutoff` times its running maximum.
pub fn integrate_dd_to_infinity<F: Fn(DD) -> DD>(f: F, a: DD, width: f64, tol: f64, cutoff: f64) -> Result<DD> {
    let mut total = DD::ZERO;
    let mut lo = a;
    let mut w = width;
    let mut running = 0.0f64;
    let mut share = 0.5 * tol;
    for i in 0..200 {
        let hi = lo.add_f64(w);
        let (v, m) = integrate_dd(&f, lo, hi, share)?;
        total = total + v;
        let done = i > 0 && m <= cutoff * running;
        running = running.max(m);
        if done || (running == 0.0 && i > 8) {
            return Ok(total);
        }
        lo = hi;
        w *= 2.0;
        share *= 0.5;
    }
    Err(Error::Quadrature {
        estimate: total.to_f64(),
        error: f64::NAN,
        intervals: 200,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let s = rule().weights.iter().fold(DD::ZERO, |acc, w| acc + *w);
        assert!((s - DD::from_f64(2.0)).to_f64().abs() < 1e-30);
    }

    #[test]
    fn antiderivative_matrix_integrates_polynomials() {
        let s = gauss_legendre_24_antiderivative();
        let nodes = gauss_legendre_24();
        for (i, &(x, _)) in nodes.iter().enumerate() {
            // f = 5t⁴ - 1, F(x) - F(-1) = x⁵ - x
            let v: f64 = nodes.iter().zip(&s[i]).map(|(&(t, _), &w)| w * (5.0 * t.powi(4) - 1.0)).sum();
            assert!((v - (x.powi(5) - x)).abs() < 1e-14);
        }
    }

    #[test]
    fn exponential_to_double_double_accuracy() {
        // ∫_0^1 e^x dx = e - 1
        let (v, _) = integrate_dd(|x| x.exp(), DD::ZERO, DD::ONE, 1e-31).unwrap();
        let exact = DD::ONE.exp() - DD::ONE;
        assert!((v - exact).to_f64().abs() < 1e-30);
    }

    #[test]
    fn gaussian_tail() {
        // ∫_0^∞ e^{-x²} dx = √π / 2
        let v = integrate_dd_to_infinity(|x| (-(x * x)).exp(), DD::ZERO, 1.0, 1e-31, 1e-40).unwrap();
        let exact = DD::PI.sqrt().mul_f64(0.5);
        assert!((v - exact).to_f64().abs() < 1e-30);
    }
}
