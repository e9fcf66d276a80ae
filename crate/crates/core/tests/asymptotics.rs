mod common;

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use common::{scalar, vector};
use egoe_core::asymptotics::*;
use egoe_core::exact::{density_normalised, expected_count_exact, rn};
use egoe_core::specfun::{airy, erf, integrate, QuadConfig};
use egoe_core::{EnsembleParams, ErrorOrder};
use proptest::prelude::*;

#[test]
fn global_strong_values() {
    let e = global_strong(0.0, 0.0, 100).unwrap();
    assert_abs_diff_eq!(e.leading, 0.398942280401433, epsilon = 1e-14);
    assert_eq!(e.error_order, ErrorOrder::ExpSmall);
    assert_abs_diff_eq!(e.composite, 10.0 * e.leading, epsilon = 1e-13);
    let want = (49.0 / (48.0 * PI)).sqrt();
    for x in [-1.5, 0.0, 0.3, 1.6] {
        assert_abs_diff_eq!(global_strong(5.0 / 7.0, x, 10).unwrap().leading, want, epsilon = 1e-15);
    }
    assert!(global_strong(0.5, 1.5, 10).is_err());
    assert!(global_strong(1.0, 0.0, 10).is_err());
}

#[test]
fn global_strong_matches_exact_density() {
    let tau = 5.0 / 7.0;
    let p = EnsembleParams::new(1280, tau).unwrap();
    let e = global_strong(tau, 0.4, 1280).unwrap();
    assert!((rn(&p, 0.4).unwrap() / e.composite - 1.0).abs() < 1e-10);
}

#[test]
fn global_weak_limits() {
    let e = global_weak(0.0, 0.0, 10).unwrap();
    assert_abs_diff_eq!(e.leading, 1.0 / PI, epsilon = 1e-15);
    assert_abs_diff_eq!(e.correction, -1.0 / (4.0 * PI), epsilon = 1e-15);
    assert_abs_diff_eq!(global_weak(1e-3, 0.0, 10).unwrap().leading, 1.0 / PI, epsilon = 1e-6);
    assert_abs_diff_eq!(global_weak(60.0, 0.0, 10).unwrap().leading, 1.0 / (4.0 * 60.0 * PI.sqrt()) * 2.0, epsilon = 1e-12);
    let a: f64 = 2.0 / 3.0;
    let e = global_weak(a, 0.0, 40).unwrap();
    assert_abs_diff_eq!(e.leading, 3.0 / (4.0 * PI.sqrt()) * erf(a), epsilon = 1e-15);
    assert!(global_weak(1.0, 2.0, 10).is_err());
    // The normalised profile flattens to the uniform density 1/4.
    assert!((normalised_weak(60.0, 0.0, 10).unwrap().leading - 0.25).abs() < 1e-3);
}

#[test]
fn global_weak_tracks_exact_density() {
    let a: f64 = 2.0 / 3.0;
    let mut errs = Vec::new();
    for n in [40usize, 80] {
        let p = EnsembleParams::new(n, 1.0 - a * a / n as f64).unwrap();
        let e = global_weak(a, 0.5, n).unwrap();
        errs.push((rn(&p, 0.5).unwrap() - e.composite).abs());
    }
    assert!(errs[0] < 0.05 && errs[1] < errs[0]);
}

#[test]
fn normalised_strong_values() {
    let e = normalised_strong(0.0, 0.2, 10).unwrap();
    assert_abs_diff_eq!(e.leading, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(e.correction, -(PI / 32.0).sqrt(), epsilon = 1e-15);
    let e = normalised_strong(1.0 - 1e-12, 0.2, 10).unwrap();
    assert_abs_diff_eq!(e.leading, 0.25, epsilon = 1e-12);
    assert!(e.correction.abs() < 1e-6);
    let tau = 5.0 / 7.0;
    let e = normalised_strong(tau, 0.5, 2560).unwrap();
    assert_abs_diff_eq!(e.leading, 7.0 / 24.0, epsilon = 1e-15);
    let p = EnsembleParams::new(2560, tau).unwrap();
    let got = density_normalised(&p, 0.5).unwrap();
    assert!((got - e.composite).abs() < 2.0 / 2560.0);
}

#[test]
fn normalised_weak_goe_branch_and_mass() {
    for x in [0.0, 1.0, 1.9] {
        let e = normalised_weak(0.0, x, 10).unwrap();
        let g = goe_bulk(x, 10).unwrap();
        assert!((e.leading - g.leading).abs() <= 1e-12);
        assert!((e.correction - g.correction).abs() <= 1e-12);
    }
    let a = 2.0 / 3.0;
    let cfg = QuadConfig::with_tol(1e-13, 0.0);
    let mass = integrate(|x| normalised_weak(a, 2.0 * x.sin(), 10).unwrap().leading * 2.0 * x.cos(), -PI / 2.0, PI / 2.0, &cfg)
        .unwrap()
        .value;
    assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-11);
    let e = normalised_weak(a, 1.0, 10).unwrap();
    let want = erf(a / 2.0 * 3f64.sqrt()) / (2.0 * a * PI.sqrt()) / scalar("c_alpha_2/3");
    assert_abs_diff_eq!(e.leading, want, epsilon = 1e-14);
}

#[test]
fn edge_strong_limits() {
    let e = edge_strong(0.5, -6.0, 100).unwrap();
    assert!((e.leading - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-8);
    assert!(edge_strong(0.5, 6.0, 100).unwrap().leading <= 1e-8);
    let e = edge_strong(0.0, 0.0, 100).unwrap();
    assert_abs_diff_eq!(e.leading, (1.0 + 0.5f64.sqrt()) / (2.0 * (2.0 * PI).sqrt()), epsilon = 1e-15);
    // ξ = 1, τ = 5/7 by direct substitution
    let tau: f64 = 5.0 / 7.0;
    let g = (-1.0f64).exp();
    let want = (1.0 - tau * tau).sqrt() / (12.0 * PI * (1.0 - tau).powi(2)) * ((1.0 + tau) - 3.0) * g * g * (1.0 + PI.sqrt() * (1.0 + erf(1.0)) / g);
    assert_abs_diff_eq!(edge_strong(tau, 1.0, 100).unwrap().correction, want, epsilon = 1e-14);
}

#[test]
fn edge_strong_against_oracle_density() {
    let e = edge_strong(5.0 / 7.0, 0.0, 160).unwrap();
    let exact = scalar("edge_strong_160_5/7_0");
    assert!((exact - e.composite).abs() < 3.0 / 160.0);
    assert!((exact - e.composite).abs() < (exact - e.leading).abs());
}

#[test]
fn airy_alpha_values() {
    let v = scalar("airy_alpha_1_0");
    assert_abs_diff_eq!(airy_alpha(1.0, 0.0).unwrap().0, v, epsilon = 1e-15);
    for x in [-3.0, 0.0, 2.5] {
        let a = airy(x);
        assert_eq!(airy_alpha(0.0, x).unwrap(), (a.ai, a.ai_prime));
    }
    let z = scalar("airy_first_zero");
    let a: f64 = 1.2;
    assert!(airy_alpha(a, z - a.powi(4) / 4.0).unwrap().0.abs() < 1e-14);
    // Large α: the weight and the Airy decay cancel; the value stays O(α^{-1}).
    let (v, _) = airy_alpha(40.0, 0.0).unwrap();
    let y: f64 = 40f64.powi(4) / 4.0;
    assert!((v / (0.5 / PI.sqrt() * y.powf(-0.25)) - 1.0).abs() < 1e-6);
    assert!(matches!(airy_alpha(1e200, 1.0), Err(egoe_core::Error::Overflow(_))));
}

#[test]
fn edge_weak_against_oracle() {
    for key in ["edge_weak_terms_2/3_0.5", "edge_weak_terms_2/3_-1"] {
        let xi: f64 = key.rsplit('_').next().unwrap().parse().unwrap();
        let want = vector(key);
        let e = edge_weak(2.0 / 3.0, xi, 64).unwrap();
        assert_abs_diff_eq!(e.leading, want[0], epsilon = 1e-11);
        assert_abs_diff_eq!(e.correction, want[1], epsilon = 1e-11);
        assert_eq!(e.error_order, ErrorOrder::TwoThirdsMinusEps);
    }
    // mpmath: 2.34610380841274e-8 at α = 0, ξ = 8
    assert!((edge_weak(0.0, 8.0, 64).unwrap().leading / 2.34610380841274e-8 - 1.0).abs() < 1e-9);
    assert!(edge_weak(0.5, 10.0, 64).unwrap().leading <= 1e-8);
}

#[test]
fn edge_weak_reduces_to_goe_edge() {
    for xi in [-3.0, -1.0, 0.0, 1.5, 3.0] {
        let w = edge_weak(0.0, xi, 64).unwrap();
        let g = goe_edge(xi, 64).unwrap();
        assert_abs_diff_eq!(w.leading, g.leading, epsilon = 1e-11);
        assert_abs_diff_eq!(w.correction, g.correction, epsilon = 1e-11);
    }
}

#[test]
fn airy_square_identity() {
    let cfg = QuadConfig::with_tol(1e-14, 1e-13);
    for xi in [-2.0, 0.0, 2.0] {
        let q = integrate(|t| airy(t).ai.powi(2), xi, f64::INFINITY, &cfg).unwrap().value;
        let a = airy(xi);
        assert!((q - (a.ai_prime * a.ai_prime - xi * a.ai * a.ai)).abs() < 1e-9);
    }
}

#[test]
fn goe_identities() {
    assert_abs_diff_eq!(goe_bulk(0.0, 10).unwrap().leading, 1.0 / PI, epsilon = 1e-15);
    assert_abs_diff_eq!(goe_bulk(1.9, 10).unwrap().leading, 0.39f64.sqrt() / (2.0 * PI), epsilon = 1e-15);
    let h = 1e-5;
    for i in 0..=80 {
        let xi = -4.0 + 0.1 * i as f64;
        let c = goe_edge(xi, 10).unwrap().correction;
        let fd = (goe_edge(xi + h, 10).unwrap().leading - goe_edge(xi - h, 10).unwrap().leading) / (2.0 * h);
        assert!((c - 0.5 * fd).abs() < 1e-8, "xi = {xi}");
        assert!((c - 0.5 * goe_edge_derivative(xi)).abs() < 1e-10, "xi = {xi}");
    }
}

#[test]
fn c_alpha_forms() {
    assert_eq!(c_alpha(0.0), 1.0);
    assert_eq!(c0_alpha(0.0), -0.5);
    assert_abs_diff_eq!(c_alpha_integral(0.0), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(c_alpha(1.0), scalar("c_alpha_1"), epsilon = 1e-14);
    assert_abs_diff_eq!(c0_alpha(1.0), scalar("c0_alpha_1"), epsilon = 1e-14);
    for a in [0.1, 0.5, 1.0, 2.0, 5.0] {
        assert!((c_alpha(a) - c_alpha_integral(a)).abs() <= 1e-10, "alpha = {a}");
    }
}

#[test]
fn expected_counts() {
    let n = 50;
    assert_abs_diff_eq!(expected_count_strong(0.0, n).unwrap(), (100.0 / PI).sqrt() + 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(expected_count_weak(0.0, n).unwrap(), 50.0, epsilon = 1e-14);
    assert!(expected_count_strong(1.0, n).is_err());
    let p = EnsembleParams::new(n, 0.5).unwrap();
    let exact = expected_count_exact(&p).unwrap();
    assert!((exact - expected_count_strong(0.5, n).unwrap()).abs() < 0.15);
}

#[test]
fn regime_gluing() {
    let n = 10_000usize;
    let nf = n as f64;
    let weak = |a: f64| global_weak(a, 0.0, n).unwrap().leading * nf;
    // Against the strong law with 1 − τ² replaced by its first order 2(1 − τ)
    // the gap is the erf saturation and closes as α grows.
    let first_order = |a: f64| {
        let one_minus_tau = a * a / nf;
        (weak(a) - (nf / (2.0 * PI * 2.0 * one_minus_tau)).sqrt()).abs() / nf.sqrt()
    };
    let (g20, g40) = (first_order(20.0), first_order(40.0));
    assert!(g40 <= g20 && g20 < 1e-12, "{g20} {g40}");
    // With the exact τ the residual is the O(α²/N) curvature of 1 − τ², α/(8√(πN)).
    for a in [20.0f64, 40.0] {
        let tau = 1.0 - a * a / nf;
        let gap = (weak(a) - (nf / (2.0 * PI * (1.0 - tau * tau))).sqrt()).abs() / nf.sqrt();
        assert!((gap / (a / (8.0 * (PI * nf).sqrt())) - 1.0).abs() < a * a / nf);
    }
}

proptest! {
    #[test]
    fn composite_is_scaled_sum(a in 0.0f64..4.0, x in -1.95f64..1.95, half in 1usize..500) {
        let n = 2 * half;
        let e = global_weak(a, x, n).unwrap();
        prop_assert!((e.composite - (e.leading * n as f64 + e.correction)).abs() <= 1e-12 * e.composite.abs().max(1.0));
        let e = normalised_weak(a, x, n).unwrap();
        prop_assert!((e.composite - (e.leading + e.correction / n as f64)).abs() <= 1e-14);
    }

    #[test]
    fn weak_leading_between_uniform_and_semicircle(a in 0.0f64..10.0, x in -1.95f64..1.95) {
        let l = global_weak(a, x, 10).unwrap().leading;
        let s = (4.0 - x * x).sqrt();
        prop_assert!(l > 0.0 && l <= s / (2.0 * PI) + 1e-15);
    }
}
