//! Flag value parsers.

use std::fmt;
use std::str::FromStr;

/// A real number given as a decimal or as a fraction `P/Q` of integers.
/// A fraction is converted with one correctly rounded division.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| format!("'{s}' is not a fraction of integers"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("'{s}' is not a fraction of integers"))?;
            const EXACT: i64 = 1 << 53;
            if q == 0 {
                return Err(format!("'{s}' has a zero denominator"));
            }
            if p.abs() > EXACT || q.abs() > EXACT {
                return Err(format!("'{s}': numerator and denominator must be at most 2^53 in magnitude"));
            }
            p as f64 / q as f64
        }
        None => s.parse::<f64>().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

impl FromStr for Real {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_real(s).map(Real)
    }
}

/// `LO:HI:POINTS`, equally spaced and inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self, String> {
        if !(lo < hi) {
            return Err(format!("grid needs LO < HI, got {lo}:{hi}"));
        }
        if points < 2 {
            return Err(format!("grid needs at least 2 points, got {points}"));
        }
        Ok(Self { lo, hi, points })
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * k as f64 / last
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, points] = parts[..] else {
            return Err(format!("'{s}' is not of the form LO:HI:POINTS"));
        };
        let points = points.trim().parse().map_err(|_| format!("'{points}' is not a point count"))?;
        GridSpec::new(parse_real(lo)?, parse_real(hi)?, points)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_decimals() {
        assert_eq!("5/7".parse::<Real>().unwrap().0, 5.0 / 7.0);
        assert_eq!("-2/3".parse::<Real>().unwrap().0, -2.0 / 3.0);
        assert_eq!("0.25".parse::<Real>().unwrap().0, 0.25);
        assert!("1/0".parse::<Real>().is_err());
        assert!("a/2".parse::<Real>().is_err());
        assert!("inf".parse::<Real>().is_err());
    }

    #[test]
    fn grids() {
        let g: GridSpec = "-1:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let g: GridSpec = "-6/5:6/5:49".parse().unwrap();
        assert_eq!(g.points().len(), 49);
        assert_eq!(g.points()[48], 1.2);
        assert!("1:0:5".parse::<GridSpec>().is_err());
        assert!("0:1:1".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
    }
}
