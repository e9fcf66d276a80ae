//! Quick self-checks of each module, run by `egoe verify`.

pub mod pr_errors;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::asymptotics::*;
use crate::error::{domain, Error, Result};
use crate::exact::*;
use crate::montecarlo::*;
use crate::planrot::{pr_critical, pr_oscillatory_scaled, pr_oscillatory_weak};
use crate::specfun::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Exact,
    Asymptotics,
    Planrot,
    Montecarlo,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Specfun, Suite::Exact, Suite::Asymptotics, Suite::Planrot, Suite::Montecarlo];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Exact => "exact",
            Suite::Asymptotics => "asymptotics",
            Suite::Planrot => "planrot",
            Suite::Montecarlo => "montecarlo",
        }
    }

    pub fn run(self) -> Vec<Check> {
        let mut c = Checks { suite: self, out: Vec::new() };
        match self {
            Suite::Specfun => specfun_checks(&mut c),
            Suite::Exact => exact_checks(&mut c),
            Suite::Asymptotics => asymptotics_checks(&mut c),
            Suite::Planrot => planrot_checks(&mut c),
            Suite::Montecarlo => montecarlo_checks(&mut c),
        }
        c.out
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| domain!("unknown suite '{s}' (expected specfun, exact, asymptotics, planrot, montecarlo or all)"))
    }
}

/// Suites named by `name`, where `all` selects every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(vec![name.parse()?])
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Checks {
    suite: Suite,
    out: Vec<Check>,
}

impl Checks {
    fn add(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn within(got: f64, want: f64, tol: f64) -> (bool, String) {
    let err = (got - want).abs();
    (err <= tol, format!("got {got:.16e}, want {want:.16e}, |diff| {err:.2e} <= {tol:.0e}"))
}

fn ratio_in(r: f64, lo: f64, hi: f64) -> (bool, String) {
    ((lo..=hi).contains(&r), format!("ratio {r:.4} in [{lo}, {hi}]"))
}

fn specfun_checks(c: &mut Checks) {
    c.add("erf(0.5)", || Ok(within(erf(0.5), 0.520_499_877_813_046_5, 1e-15)));
    c.add("Ai(0), Ai'(0)", || {
        let a = airy(0.0);
        let (ok1, d1) = within(a.ai, 0.355_028_053_887_817_2, 1e-15);
        let (ok2, _) = within(a.ai_prime, -0.258_819_403_792_806_8, 1e-15);
        Ok((ok1 && ok2, d1))
    });
    c.add("integral of Ai over [0, inf) = 1/3", || Ok(within(airy_ai_integral(0.0), 1.0 / 3.0, 1e-15)));
    c.add("I0(1), I1(1)", || {
        let (ok1, d) = within(bessel_i(0, 1.0)?, 1.266_065_877_752_008_4, 1e-14);
        let (ok2, _) = within(bessel_i(1, 1.0)?, 0.565_159_103_992_485_1, 1e-14);
        Ok((ok1 && ok2, d))
    });
    c.add("P + Q = 1", || {
        let worst = [(0.5, 0.3), (5.0, 2.0), (20.5, 25.0), (3.0, 40.0)]
            .iter()
            .map(|&(s, x)| Ok((gamma_p(s, x)? + gamma_q(s, x)? - 1.0).abs()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        Ok((worst <= 1e-14, format!("max |P + Q - 1| = {worst:.2e}")))
    });
    c.add("gamma(5, 2) lower", || Ok(within(lower_incomplete_gamma(5.0, 2.0)?, 24.0 * (1.0 - 7.0 * (-2.0f64).exp()), 1e-13)));
    c.add("H_10(0) = -30240", || Ok(within(hermite_extended(10, 0.0).to_f64(), -30240.0, 1e-9)));
    c.add("oscillator wave normalisation", || {
        let cfg = QuadConfig::with_tol(1e-14, 1e-12);
        let q = integrate(|t| oscillator_wave(30, t).powi(2), -12.0, 12.0, &cfg)?.value;
        Ok(within(q, 1.0, 1e-11))
    });
    c.add("Gaussian half-line quadrature", || {
        let q = quad_adaptive(|x| (-x * x).exp(), 0.0, f64::INFINITY, 1e-14)?.value;
        Ok(within(q, 0.5 * PI.sqrt(), 1e-14))
    });
    c.add("2F1 at z = 0 is 1/Gamma(c)", || Ok(within(hyp2f1_regularized(0.5, 1.5, 3.5, 0.0)?, 1.0 / gamma(3.5), 1e-15)));
}

fn exact_checks(c: &mut Checks) {
    c.add("E(2, 0) = sqrt 2", || Ok(within(expected_count_exact(&EnsembleParams::new(2, 0.0)?)?, 2f64.sqrt(), 1e-8)));
    c.add("E(2, 1) = 2", || Ok(within(expected_count_exact(&EnsembleParams::new(2, 1.0)?)?, 2.0, 1e-8)));
    c.add("rn(2, 0, 0) = 1/sqrt(pi)", || Ok(within(rn(&EnsembleParams::new(2, 0.0)?, 0.0)?, 1.0 / PI.sqrt(), 1e-10)));
    c.add("sum and integral forms of R1 agree", || {
        let mut worst = 0.0f64;
        for (n, tau, x) in [(20, 0.3, 0.2), (40, 0.6, 0.7), (40, 0.9, 1.1)] {
            let p = EnsembleParams::new(n, tau)?;
            let s = rn1_sum(&p, x)?;
            worst = worst.max((s - rn1_integral(&p, x, Anchor::Point(0.0))?).abs() / s);
        }
        Ok((worst <= 1e-8, format!("max relative difference {worst:.2e}")))
    });
    c.add("direct and tail forms of R2 agree", || {
        let mut worst = 0.0f64;
        for (n, tau, x) in [(20, 0.3, 0.2), (40, 0.6, 0.7), (40, 0.9, 1.1)] {
            let p = EnsembleParams::new(n, tau)?;
            let d = rn2(&p, x, Rn2Form::Direct)?;
            worst = worst.max((d - rn2(&p, x, Rn2Form::Tail)?).abs() / d.abs());
        }
        Ok((worst <= 1e-8, format!("max relative difference {worst:.2e}")))
    });
    c.add("rn is even and integrates to E", || {
        let p = EnsembleParams::new(10, 0.5)?;
        let odd = (rn(&p, 0.8)? - rn(&p, -0.8)?).abs();
        let cfg = QuadConfig::with_tol(1e-12, 1e-12);
        let mass = 2.0 * integrate(|x| rn(&p, x).unwrap_or(f64::NAN), 0.0, 4.0, &cfg)?.value;
        let (ok, d) = within(mass, expected_count_exact(&p)?, 1e-9);
        Ok((ok && odd <= 1e-12, d))
    });
}

fn asymptotics_checks(c: &mut Checks) {
    c.add("GOE edge correction is half the derivative of the leading term", || {
        let h = 1e-5;
        let mut worst = 0.0f64;
        for i in 0..=80 {
            let xi = -4.0 + 0.1 * f64::from(i);
            let fd = (edge_weak(0.0, xi + h, 64)?.leading - edge_weak(0.0, xi - h, 64)?.leading) / (2.0 * h);
            worst = worst.max((goe_edge(xi, 64)?.correction - 0.5 * fd).abs());
        }
        Ok((worst <= 1e-8, format!("max deviation {worst:.2e} on [-4, 4]")))
    });
    c.add("weak bulk at alpha = 0 is the GOE bulk", || {
        let mut worst = 0.0f64;
        for x in [0.0, 1.0, 1.9] {
            let (w, g) = (normalised_weak(0.0, x, 10)?, goe_bulk(x, 10)?);
            worst = worst.max((w.leading - g.leading).abs()).max((w.correction - g.correction).abs());
        }
        Ok((worst <= 1e-12, format!("max deviation {worst:.2e}")))
    });
    c.add("c(alpha) Bessel and integral forms agree", || {
        let worst = [0.1, 0.5, 1.0, 2.0, 5.0]
            .iter()
            .map(|&a| (c_alpha(a) - c_alpha_integral(a)).abs())
            .fold(0.0, f64::max);
        Ok((worst <= 1e-10, format!("max deviation {worst:.2e}")))
    });
    c.add("strong count expansion at N = 50", || {
        let exact = expected_count_exact(&EnsembleParams::new(50, 0.5)?)?;
        Ok(within(expected_count_strong(0.5, 50)?, exact, 50f64.powf(-0.5)))
    });
    c.add("strong global leading term", || {
        let tau: f64 = 5.0 / 7.0;
        Ok(within(global_strong(tau, 0.3, 80)?.leading, (1.0 / (2.0 * PI * (1.0 - tau * tau))).sqrt(), 1e-15))
    });
}

fn planrot_checks(c: &mut Checks) {
    use pr_errors::*;
    let window = |r: f64, order: f64| ((r - order).abs() <= 0.5, format!("order {r:.3}, expected {order:.3} +- 0.5"));
    c.add("oscillatory, corrected", || Ok(window(rate(osc_errors(400, 0, 0.5)?.1, osc_errors(800, 0, 0.5)?.1), 2.0)));
    c.add("critical, corrected", || Ok(window(rate(crit_errors(512, 0)?.1, crit_errors(1024, 0)?.1), 2.0 / 3.0)));
    c.add("exponential", || Ok(window(rate(exp_error(200, 0, 1.5)?, exp_error(400, 0, 1.5)?), 1.0)));
    c.add("weak oscillatory, corrected", || {
        let a = 2.0 / 3.0;
        Ok(window(rate(osc_weak_errors(200, -1, a, 0.8)?.1, osc_weak_errors(400, -1, a, 0.8)?.1), 2.0))
    });
    c.add("exponential edge, corrected", || {
        let t = 5.0 / 7.0;
        Ok(window(rate(exp_edge_errors(800, -1, t, 1.0)?.1, exp_edge_errors(1600, -1, t, 1.0)?.1), 1.0))
    });
    c.add("weak critical, corrected", || {
        let a = 2.0 / 3.0;
        Ok(window(rate(crit_weak_errors(1024, -2, a)?.1, crit_weak_errors(2048, -2, a)?.1), 2.0 / 3.0))
    });
    c.add("alpha = 0 reductions", || {
        let w = pr_oscillatory_weak(300, 0, 0.0, 1.1)?.corrected - pr_oscillatory_scaled(300, 0, 0.55)?.corrected;
        let k = crate::planrot::pr_critical_weak(300, 0, 0.0, 0.4)?.corrected - pr_critical(300, 0, 0.4)?.corrected;
        let worst = w.abs().max(k.abs());
        Ok((worst <= 1e-12, format!("max deviation {worst:.2e}")))
    });
    c.add("stationary phase, f = 1, psi = u^2", || Ok(ratio_in(stationary_phase_errors(50.0)?.1 / stationary_phase_errors(100.0)?.1, 3.0, 5.5)));
}

fn montecarlo_checks(c: &mut Checks) {
    c.add("N = 2, tau = 1 always has two real eigenvalues", || {
        let (mean, _) = expected_count_mc(&SampleConfig::new(2, 1.0, 200, 1)?)?;
        Ok((mean == 2.0, format!("mean {mean}")))
    });
    c.add("count parity", || {
        let counts = real_counts(&SampleConfig::new(10, 0.4, 200, 2)?)?;
        let odd = counts.iter().filter(|&&k| k % 2 == 1).count();
        Ok((odd == 0, format!("{odd} odd counts in 200 trials")))
    });
    c.add("identical seeds give identical histograms", || {
        let cfg = SampleConfig::new(8, 0.5, 100, 3)?;
        let edges: Vec<f64> = (0..=8).map(|k| -1.6 + 0.4 * f64::from(k)).collect();
        let same = density_histogram(&cfg, &edges)? == density_histogram(&cfg, &edges)?;
        Ok((same, String::new()))
    });
    c.add("count at N = 20, tau = 0.5 against exact", || {
        let (mean, se) = expected_count_mc(&SampleConfig::new(20, 0.5, 4000, 4)?)?;
        let exact = expected_count_exact(&EnsembleParams::new(20, 0.5)?)?;
        let z = (mean - exact) / se;
        Ok((z.abs() <= 4.0, format!("mean {mean:.4} +- {se:.4}, exact {exact:.4}, z = {z:.2}")))
    });
}
