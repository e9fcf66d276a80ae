//! Hermite polynomials in extended range and normalised oscillator waves.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

use super::dd::{pow2, DoubleDouble};

const LN_10: f64 = std::f64::consts::LN_10;
/// `π^{-1/4}`.
pub const PI_POW_MINUS_QUARTER: f64 = 0.751_125_544_464_942_5;

/// Real number `sign × mantissa × 10^exponent` with the mantissa in `[1, 10)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedReal {
    sign: i8,
    mantissa: f64,
    exponent: i64,
}

impl ExtendedReal {
    pub const ZERO: Self = Self {
        sign: 0,
        mantissa: 0.0,
        exponent: 0,
    };

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_binary(x, 0)
    }

    /// Builds `m × 2^e`. The binary exponent is converted to decimal with a
    /// double-double `log10(2)`, so huge `e` cost no precision.
    pub fn from_binary(m: f64, e: i64) -> Self {
        if m == 0.0 || !m.is_finite() {
            return Self::ZERO;
        }
        let (f, k) = libm::frexp(m.abs());
        let total = e + k as i64;
        let sign = if m < 0.0 { -1 } else { 1 };
        if (-1000..=1000).contains(&total) {
            // Native range: scale in double-double so the round trip is exact.
            let v = f * pow2(total as i32);
            let mut e10 = v.log10().floor() as i64;
            let mut mant = scale10(DoubleDouble::from_f64(v), -e10);
            if mant.hi >= 10.0 {
                e10 += 1;
                mant = mant.div_f64(10.0);
            } else if mant.hi < 1.0 {
                e10 -= 1;
                mant = mant.mul_f64(10.0);
            }
            return Self {
                sign,
                mantissa: mant.to_f64(),
                exponent: e10,
            };
        }
        let p = DoubleDouble::LOG10_2.mul_f64(total as f64);
        let whole = p.hi.floor();
        let frac = (p - DoubleDouble::from_f64(whole)).to_f64() + f.log10();
        Self::from_log10_split(sign, whole as i64, frac)
    }

    /// Builds `sign × e^{ln_abs}`.
    pub fn from_ln(sign: i8, ln_abs: f64) -> Self {
        if sign == 0 || ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let l = ln_abs / LN_10;
        let whole = l.floor();
        Self::from_log10_split(sign.signum(), whole as i64, l - whole)
    }

    fn from_log10_split(sign: i8, whole: i64, frac: f64) -> Self {
        let shift = frac.floor();
        let mut exponent = whole + shift as i64;
        let mut mantissa = 10f64.powf(frac - shift);
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exponent += 1;
        }
        if mantissa < 1.0 {
            mantissa *= 10.0;
            exponent -= 1;
        }
        Self {
            sign,
            mantissa,
            exponent,
        }
    }

    /// Nearest native value; saturates to `±inf` or `0` outside the range.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let s = self.sign as f64;
        if self.exponent > 308 {
            return s * f64::INFINITY;
        }
        if self.exponent < -330 {
            return 0.0;
        }
        s * scale10(DoubleDouble::from_f64(self.mantissa), self.exponent).to_f64()
    }

    /// `log10 |x|`; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.exponent as f64 + self.mantissa.log10()
        }
    }

    /// `ln |x|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.log10_abs() * LN_10
    }

    pub fn abs(self) -> Self {
        Self {
            sign: self.sign.abs(),
            ..self
        }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        self * Self::from_f64(x)
    }

    /// Multiplies by `e^{ln}`.
    pub fn mul_exp(self, ln: f64) -> Self {
        self * Self::from_ln(1, ln)
    }
}

fn frexp(x: f64) -> (f64, i32) {
    libm::frexp(x)
}

/// `v × 10^k` in double-double, in chunks small enough not to overflow.
fn scale10(mut v: DoubleDouble, k: i64) -> DoubleDouble {
    let ten = DoubleDouble::from_f64(10.0);
    let mut left = k;
    while left != 0 {
        let step = left.clamp(-280, 280);
        let p = ten.powi(step.unsigned_abs());
        v = if step > 0 { v * p } else { v / p };
        left -= step;
    }
    v
}

impl Mul for ExtendedReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        let mut mantissa = self.mantissa * rhs.mantissa;
        let mut exponent = self.exponent + rhs.exponent;
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exponent += 1;
        }
        Self {
            sign: self.sign * rhs.sign,
            mantissa,
            exponent,
        }
    }
}

impl Div for ExtendedReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        if rhs.sign == 0 {
            return Self {
                sign: self.sign,
                mantissa: f64::INFINITY,
                exponent: i64::MAX,
            };
        }
        let mut mantissa = self.mantissa / rhs.mantissa;
        let mut exponent = self.exponent - rhs.exponent;
        if mantissa < 1.0 {
            mantissa *= 10.0;
            exponent -= 1;
        }
        Self {
            sign: self.sign * rhs.sign,
            mantissa,
            exponent,
        }
    }
}

impl Neg for ExtendedReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            ..self
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return Some(ord),
        }
        if self.sign == 0 {
            return Some(Ordering::Equal);
        }
        let mag = (self.exponent, self.mantissa).partial_cmp(&(other.exponent, other.mantissa))?;
        Some(if self.sign > 0 { mag } else { mag.reverse() })
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.sign as f64 * self.mantissa;
        match f.precision() {
            Some(p) => write!(f, "{m:.p$}e{}", self.exponent),
            None => write!(f, "{m}e{}", self.exponent),
        }
    }
}

// Kept well below the f64 range so a product of two mantissas cannot overflow.
const RESCALE: i32 = 256;
const BIG: f64 = 1.157_920_892_373_162e77; // 2^256
const SMALL: f64 = 8.636_168_555_094_445e-78; // 2^-256

/// `H_n(t)` (physicists' convention) by the three-term recurrence, carried
/// as a mantissa pair with a shared binary exponent.
pub fn hermite_extended(n: usize, t: f64) -> ExtendedReal {
    let (m, e) = hermite_binary(n, t);
    ExtendedReal::from_binary(m, e)
}

/// `H_n(t) = m × 2^e`.
pub fn hermite_binary(n: usize, t: f64) -> (f64, i64) {
    if n == 0 {
        return (1.0, 0);
    }
    let (mut h0, mut h1) = (1.0, 2.0 * t);
    let mut e: i64 = 0;
    for k in 1..n {
        let h2 = 2.0 * t * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
        if h1.abs() > BIG {
            h0 *= SMALL;
            h1 *= SMALL;
            e += RESCALE as i64;
        }
    }
    (h1, e)
}

/// Normalised Hermite recurrence
/// `χ_{k+1} = a √(2/(k+1)) χ_k − b √(k/(k+1)) χ_{k−1}`, `χ_0 = π^{-1/4}`.
/// With `a = t w`, `b = w²` this gives
/// `χ_k = w^k H_k(t) / (π^{1/4} √(2^k k!))`; with `w = 1` it is the
/// oscillator wave without its Gaussian factor.
///
/// Values are `mantissa × 2^exp2` with an exponent shared by the pair.
#[derive(Debug, Clone)]
pub struct WaveRecurrence {
    a: f64,
    b: f64,
    k: usize,
    prev: f64,
    cur: f64,
    exp2: i64,
}

impl WaveRecurrence {
    pub fn new(t: f64, w: f64) -> Self {
        Self::with_coefficients(t * w, w * w)
    }

    pub fn with_coefficients(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            k: 0,
            prev: 0.0,
            cur: PI_POW_MINUS_QUARTER,
            exp2: 0,
        }
    }

    pub fn index(&self) -> usize {
        self.k
    }

    /// Current `(mantissa, exp2)`.
    pub fn value(&self) -> (f64, i64) {
        (self.cur, self.exp2)
    }

    /// Previous `(mantissa, exp2)`, i.e. index `k - 1`.
    pub fn previous(&self) -> (f64, i64) {
        (self.prev, self.exp2)
    }

    pub fn advance(&mut self) {
        let k = self.k as f64;
        let next = self.a * (2.0 / (k + 1.0)).sqrt() * self.cur - self.b * (k / (k + 1.0)).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        let big = self.cur.abs().max(self.prev.abs());
        if big > BIG {
            self.prev *= SMALL;
            self.cur *= SMALL;
            self.exp2 += RESCALE as i64;
        } else if big < SMALL && big > 0.0 {
            self.prev *= BIG;
            self.cur *= BIG;
            self.exp2 -= RESCALE as i64;
        }
    }

    /// Advances until the current index equals `n`.
    pub fn advance_to(&mut self, n: usize) {
        while self.k < n {
            self.advance();
        }
    }
}

/// `m × 2^{e} × e^{g}` evaluated without intermediate over- or underflow.
pub fn scale_binary_exp(m: f64, e: i64, g: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let (f, k) = frexp(m.abs());
    let total = (e + k as i64) as f64 * std::f64::consts::LN_2 + g;
    let v = if total > 709.78 {
        f64::INFINITY
    } else {
        f * total.exp()
    };
    if m < 0.0 {
        -v
    } else {
        v
    }
}

/// Normalised oscillator wave
/// `ψ_n(t) = H_n(t) e^{-t²/2} / (π^{1/4} 2^{n/2} √(n!))`.
pub fn oscillator_wave(n: usize, t: f64) -> f64 {
    let mut r = WaveRecurrence::new(t, 1.0);
    r.advance_to(n);
    let (m, e) = r.value();
    scale_binary_exp(m, e, -0.5 * t * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_values() {
        assert_eq!(hermite_extended(3, 1.0).to_f64(), -4.0);
        assert_eq!(hermite_extended(0, 12.5).to_f64(), 1.0);
        assert!((oscillator_wave(0, 0.0) - 0.751125544464943).abs() < 1e-15);
        assert_eq!(oscillator_wave(1, 0.0), 0.0);
    }

    #[test]
    fn extended_round_trip() {
        for &x in &[1.0, -3.5e-200, 7.25e300, 0.1, -9.999999] {
            let e = ExtendedReal::from_f64(x);
            assert!((e.to_f64() / x - 1.0).abs() < 4e-16, "x = {x}");
            assert!(e.mantissa() >= 1.0 && e.mantissa() < 10.0);
        }
        assert!(ExtendedReal::from_f64(0.0).is_zero());
    }

    #[test]
    fn huge_binary_exponent_keeps_precision() {
        // 2^100000 = 9.990020930143845e30102
        let e = ExtendedReal::from_binary(1.0, 100_000);
        assert_eq!(e.exponent(), 30102);
        assert!((e.mantissa() - 9.990020930143845).abs() < 1e-12);
    }

    #[test]
    fn products_and_quotients() {
        let a = ExtendedReal::from_binary(3.0, 5000);
        let b = ExtendedReal::from_binary(-5.0, -4990);
        assert!(((a * b).to_f64() + 15.0 * 1024.0).abs() < 1e-10);
        assert!(((a / a).to_f64() - 1.0).abs() < 1e-15);
        assert!(b < a);
    }

    #[test]
    fn wave_deep_tail_does_not_underflow_early() {
        // ψ_0(40) = π^{-1/4} e^{-800} is below f64 range; the scaled form is not.
        let v = oscillator_wave(200, 40.0);
        assert!(v.is_finite() && v > 0.0);
    }
}
