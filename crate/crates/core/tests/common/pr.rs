use egoe_core::verify::pr_errors as pe;

#[allow(unused_imports)]
pub use pe::rate;

pub fn osc_errors(n: usize, m: i64, x0: f64) -> (f64, f64) {
    pe::osc_errors(n, m, x0).unwrap()
}

pub fn osc_weak_errors(n: usize, m: i64, alpha: f64, x0: f64) -> (f64, f64) {
    pe::osc_weak_errors(n, m, alpha, x0).unwrap()
}

pub fn crit_errors(n: usize, m: i64) -> (f64, f64) {
    pe::crit_errors(n, m).unwrap()
}

pub fn crit_weak_errors(n: usize, m: i64, alpha: f64) -> (f64, f64) {
    pe::crit_weak_errors(n, m, alpha).unwrap()
}

pub fn exp_error(n: usize, m: i64, x: f64) -> f64 {
    pe::exp_error(n, m, x).unwrap()
}

pub fn exp_edge_errors(n: usize, m: i64, tau: f64, xi: f64) -> (f64, f64) {
    pe::exp_edge_errors(n, m, tau, xi).unwrap()
}
