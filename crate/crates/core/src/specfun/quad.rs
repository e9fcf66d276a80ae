//! Globally adaptive 21-point Gauss-Kronrod quadrature.
//!
//! Finite intervals use the QUADPACK QAG strategy: the segment with the
//! largest error estimate is bisected until the summed estimate meets the
//! tolerance. A `+inf` upper limit is handled by marching over panels of
//! doubling width and truncating once the integrand drops below
//! `tail_cutoff` times the largest magnitude seen so far.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Tolerances and budgets for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of segments (summed over all panels).
    pub max_intervals: usize,
    /// Relative magnitude below which a semi-infinite tail is dropped.
    pub tail_cutoff: f64,
    /// Width of the first panel on a semi-infinite range.
    pub panel: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 0.0,
            max_intervals: 10_000,
            tail_cutoff: 1e-18,
            panel: 1.0,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn panel(mut self, width: f64) -> Self {
        self.panel = width;
        self
    }
}

/// Result of a successful integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
    maxabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut resabs = fc.abs() * WGK[10];
    let mut maxabs = fc.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        res_k += WGK[j] * sum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        maxabs = maxabs.max(f1.abs()).max(f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * sum;
        }
    }
    let mean = 0.5 * res_k;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    let value = res_k * half;
    let err = rescale_error((res_k - res_g) * half, resabs * abs_half, resasc * abs_half);
    Segment {
        a,
        b,
        value,
        error: err,
        resabs: resabs * abs_half,
        maxabs,
    }
}

struct Adaptive {
    value: f64,
    error: f64,
    intervals: usize,
    maxabs: f64,
    converged: bool,
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    pieces: &[(f64, f64)],
    abs_tol: f64,
    rel_tol: f64,
    budget: usize,
) -> Adaptive {
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut resabs = 0.0;
    let mut maxabs = 0.0f64;
    for &(a, b) in pieces {
        let s = gk21(f, a, b);
        value += s.value;
        error += s.error;
        resabs += s.resabs;
        maxabs = maxabs.max(s.maxabs);
        heap.push(s);
    }
    let mut intervals = heap.len();
    let mut converged;
    loop {
        let tol = abs_tol.max(rel_tol * value.abs());
        converged = error <= tol || error <= 50.0 * f64::EPSILON * resabs;
        if converged || intervals >= budget.max(1) {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) {
            // Segment cannot be split further; accept it as it stands.
            heap.push(Segment { error: 0.0, ..worst });
            error -= worst.error;
            continue;
        }
        let left = gk21(f, worst.a, mid);
        let right = gk21(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        resabs += left.resabs + right.resabs - worst.resabs;
        maxabs = maxabs.max(left.maxabs).max(right.maxabs);
        heap.push(left);
        heap.push(right);
        intervals += 1;
        if intervals % 64 == 0 {
            // Re-sum to shed accumulated rounding in the running totals.
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    Adaptive {
        value,
        error: error.max(0.0),
        intervals,
        maxabs,
        converged,
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`; `b` may be
/// `f64::INFINITY`.
pub fn quad_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    integrate(f, a, b, &QuadConfig::with_tol(tol, 0.0))
}

/// Integrates `f` over `[a, b]` with the tolerances in `cfg`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    integrate_pieces(f, &[a, b], cfg)
}

/// Integrates over `[points[0], points[last]]` with explicit breakpoints.
/// The last point may be `f64::INFINITY`.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, points: &[f64], cfg: &QuadConfig) -> Result<Quadrature> {
    if points.len() < 2 {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let last = points[points.len() - 1];
    let finite_end = if last == f64::INFINITY { points.len() - 1 } else { points.len() };
    let finite = &points[..finite_end];
    let mut pieces: Vec<(f64, f64)> = finite.windows(2).filter(|w| w[0] != w[1]).map(|w| (w[0], w[1])).collect();
    let (mut value, mut error, mut intervals, mut maxabs) = (0.0, 0.0, 0, 0.0f64);
    let tail = last == f64::INFINITY;
    let abs_tol = if tail { 0.5 * cfg.abs_tol } else { cfg.abs_tol };
    if !pieces.is_empty() {
        let r = adaptive(&f, &pieces, abs_tol, cfg.rel_tol, cfg.max_intervals);
        if !r.converged {
            return Err(Error::Quadrature {
                estimate: r.value,
                error: r.error,
                intervals: r.intervals,
            });
        }
        value = r.value;
        error = r.error;
        intervals = r.intervals;
        maxabs = r.maxabs;
    }
    if tail {
        let start = finite[finite.len() - 1];
        let mut lo = start;
        let mut width = cfg.panel;
        let mut share = 0.25 * cfg.abs_tol;
        pieces.clear();
        for panel in 0..200 {
            let hi = lo + width;
            let budget = cfg.max_intervals.saturating_sub(intervals).max(1);
            let r = adaptive(&f, &[(lo, hi)], share, cfg.rel_tol, budget);
            intervals += r.intervals;
            value += r.value;
            error += r.error;
            if !r.converged {
                return Err(Error::Quadrature {
                    estimate: value,
                    error,
                    intervals,
                });
            }
            let done = r.maxabs <= cfg.tail_cutoff * maxabs || (maxabs == 0.0 && r.maxabs == 0.0 && panel >= 8);
            maxabs = maxabs.max(r.maxabs);
            if done && panel > 0 {
                break;
            }
            lo = hi;
            width *= 2.0;
            share *= 0.5;
        }
    }
    Ok(Quadrature { value, error, intervals })
}
