//! Shared parameter sets for the criterion benchmarks.

/// `(N, τ)` pairs covering small, medium and figure-scale matrices.
pub const STRONG_CASES: &[(usize, f64)] = &[(80, 5.0 / 7.0), (640, 5.0 / 7.0), (2560, 5.0 / 7.0)];

/// Evenly spaced grid including both endpoints.
pub fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}
