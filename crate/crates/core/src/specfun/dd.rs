//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving roughly 32 significant decimal digits. Only the operations the
//! crate needs are provided: the four arithmetic operations, square root,
//! `exp`, `ln` and exact scaling by powers of two.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: 3.141592653589793116e+00,
        lo: 1.224646799147353207e-16,
    };
    pub const LN_2: Self = Self {
        hi: 6.931471805599452862e-01,
        lo: 2.319046813846299558e-17,
    };
    pub const LOG10_2: Self = Self {
        hi: 3.010299956639811980e-01,
        lo: -2.803728127785170339e-18,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (s, e) = quick_two_sum(s, e + self.lo);
        Self::new(s, e)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (p, e) = quick_two_sum(p, e + self.lo * b);
        Self::new(p, e)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let f = f - e + self.lo;
        let q2 = (s + f) / b;
        let (q, r) = quick_two_sum(q1, q2);
        Self::new(q, r)
    }

    /// Multiplies by `2^k`; exact unless the result over- or underflows.
    #[inline]
    pub fn ldexp(self, k: i32) -> Self {
        let s = pow2(k);
        Self::new(self.hi * s, self.lo * s)
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::ZERO } else { Self::new(f64::NAN, f64::NAN) };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let diff = (self - Self::from_f64(ax).sqr()).hi;
        let (p, e) = two_sum(ax, diff * (x * 0.5));
        Self::new(p, e)
    }

    /// `exp` to full double-double precision for arguments within the
    /// native exponent range.
    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        let k = (self.hi / Self::LN_2.hi).round();
        let r = self - Self::LN_2.mul_f64(k);
        // Reduce further by 2^-10 so the Taylor series converges in a few terms.
        let r = r.ldexp(-10);
        let mut term = r;
        let mut sum = r;
        for n in 2..=24 {
            term = (term * r).div_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        // exp(r) - 1 squared up: (1 + s)^2 - 1 = s (2 + s).
        for _ in 0..10 {
            sum = sum * sum.add_f64(2.0);
        }
        (sum.add_f64(1.0)).ldexp(k as i32)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::new(f64::NAN, f64::NAN);
        }
        // One Newton step on y -> y + x e^{-y} - 1 doubles the precision.
        let y = Self::from_f64(self.hi.ln());
        let y = y + self * (-y).exp() - Self::ONE;
        y + self * (-y).exp() - Self::ONE
    }

    pub fn powi(self, n: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn pow2(k: i32) -> f64 {
    if (-1022..=1023).contains(&k) {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        2f64.powi(k)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (s1, s2) = quick_two_sum(s1, s2);
        Self::new(s1, s2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (p, e) = quick_two_sum(p, e);
        Self::new(p, e)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self::new(q1, q2).add_f64(q3)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: DoubleDouble, b: DoubleDouble) -> f64 {
        ((a - b).to_f64() / b.to_f64()).abs()
    }

    #[test]
    fn sqrt_two_squares_back() {
        let two = DoubleDouble::from_f64(2.0);
        let r = two.sqrt();
        assert!(rel(r * r, two) < 1e-31);
        // sqrt(2) = 1.41421356237309504880168872420969807857
        assert_eq!(r.hi, std::f64::consts::SQRT_2);
        assert!((r.lo - (-9.667293313452913e-17)).abs() < 1e-31);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[-30.5, -1.0, -1e-3, 0.25, 1.0, 7.75, 300.0] {
            let v = DoubleDouble::from_f64(x);
            let back = v.exp().ln();
            assert!((back - v).to_f64().abs() < 1e-30 * x.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn exp_one_is_e() {
        // e = 2.71828182845904523536028747135266249776
        let e = DoubleDouble::ONE.exp();
        assert_eq!(e.hi, std::f64::consts::E);
        assert!((e.lo - 1.4456468917292502e-16).abs() < 1e-31);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = DoubleDouble::new(1.0, 1e-20);
        let b = DoubleDouble::from_f64(3.0);
        assert!(rel((a / b) * b, a) < 1e-31);
        assert!(rel(a.div_f64(3.0), a / b) < 1e-31);
    }
}
