//! Modified Bessel functions `I_0` and `I_1`.

use crate::error::{domain, Result};

const SERIES_LIMIT: f64 = 40.0;

/// `I_nu(x)` for `nu` in {0, 1} and `x >= 0`.
pub fn bessel_i(nu: u32, x: f64) -> Result<f64> {
    let s = bessel_i_scaled(nu, x)?;
    Ok(s * x.exp())
}

/// `e^{-x} I_nu(x)`; finite for every `x >= 0`.
pub fn bessel_i_scaled(nu: u32, x: f64) -> Result<f64> {
    if nu > 1 {
        return Err(domain!("bessel_i: order {nu} not in {{0, 1}}"));
    }
    if !(x >= 0.0) {
        return Err(domain!("bessel_i: argument {x} must be nonnegative"));
    }
    if x <= SERIES_LIMIT {
        Ok(series(nu, x) * (-x).exp())
    } else {
        Ok(asymptotic_scaled(nu, x))
    }
}

fn series(nu: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = if nu == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let nf = nu as f64;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + nf));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Hankel expansion `e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum (-1)^k a_k / x^k`.
fn asymptotic_scaled(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn i0_at_one() {
        assert!((bessel_i(0, 1.0).unwrap() / 1.26606587775201 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn branches_meet() {
        for nu in 0..2 {
            let a = series(nu, SERIES_LIMIT) * (-SERIES_LIMIT).exp();
            let b = asymptotic_scaled(nu, SERIES_LIMIT);
            assert!((a / b - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(bessel_i(2, 1.0).is_err());
        assert!(bessel_i(0, -1.0).is_err());
    }
}
