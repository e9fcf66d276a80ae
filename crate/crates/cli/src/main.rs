//! `egoe`: exact and asymptotic real-eigenvalue densities of the elliptic
//! real Ginibre ensemble on grids, expected counts, Monte Carlo samples and
//! self-checks.

mod output;
mod parse;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use egoe_core::asymptotics::{edge_strong, edge_weak, expected_count_strong, expected_count_weak, global_strong, global_weak};
use egoe_core::exact::{edge_grid, expected_count_exact, rn_grid};
use egoe_core::montecarlo::{expected_count_mc, sample_real_eigenvalues};
use egoe_core::verify::{parse_suites, Check};
use egoe_core::{DensityExpansion, EdgeRegime, EnsembleParams, Error, SampleConfig, Scaling, WeakRegimeParams};

use output::{Format, Table};
use parse::{GridSpec, Real};

#[derive(Parser)]
#[command(name = "egoe", version, about = "Real-eigenvalue densities of the elliptic real Ginibre ensemble")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density R_N against its global large-N expansion.
    Density(GridArgs),
    /// Edge-rescaled exact density against the edge expansion.
    Edge(GridArgs),
    /// Expected number of real eigenvalues: exact, asymptotic and Monte Carlo.
    Count(CountArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
    /// Sorted real eigenvalues of sampled matrices.
    Sample(SampleArgs),
}

#[derive(Args, Clone)]
struct EnsembleArgs {
    /// Matrix size (even).
    #[arg(long)]
    n: usize,
    /// Fixed non-Hermiticity τ in [0, 1]; accepts fractions such as 5/7.
    #[arg(long, conflicts_with = "alpha", allow_hyphen_values = true)]
    tau: Option<Real>,
    /// Weak non-Hermiticity parameter α ≥ 0; accepts fractions.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<Real>,
    /// How τ approaches 1 for --alpha: bulk (τ = 1 − α²/N) or edge (τ = 1 − α²/N^{1/3}).
    #[arg(long, value_enum)]
    scaling: Option<ScalingArg>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ScalingArg {
    Bulk,
    Edge,
}

impl From<ScalingArg> for Scaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::Bulk => Scaling::Bulk,
            ScalingArg::Edge => Scaling::Edge,
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Evaluation grid LO:HI:POINTS, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// Number of grid points, overriding the count in --grid.
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Also estimate the count from this many sampled matrices.
    #[arg(long)]
    mc: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// specfun, exact, asymptotics, planrot, montecarlo or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    tau: Real,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numerical(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => Failure::Usage(m),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

type CliResult<T> = Result<T, Failure>;

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {e}"))
}

/// The ensemble selected by --tau or --alpha/--scaling.
#[derive(Clone, Copy)]
enum Regime {
    Strong(EnsembleParams),
    Weak(WeakRegimeParams),
}

impl Regime {
    fn from_args(a: &EnsembleArgs, default_scaling: Scaling) -> CliResult<Self> {
        if a.n < 2 || a.n % 2 != 0 {
            return Err(usage("--n", format!("matrix size must be a positive even integer, got {}", a.n)));
        }
        match (a.tau, a.alpha) {
            (Some(Real(tau)), None) => {
                if a.scaling.is_some() {
                    return Err(usage("--scaling", "only applies with --alpha"));
                }
                Ok(Regime::Strong(EnsembleParams::new(a.n, tau).map_err(|e| usage("--tau", e))?))
            }
            (None, Some(Real(alpha))) => {
                let scaling = a.scaling.map_or(default_scaling, Scaling::from);
                Ok(Regime::Weak(WeakRegimeParams::new(a.n, alpha, scaling).map_err(|e| usage("--alpha", e))?))
            }
            _ => Err(usage("--tau/--alpha", "exactly one of --tau and --alpha is required")),
        }
    }

    fn ensemble(&self) -> EnsembleParams {
        match self {
            Regime::Strong(p) => *p,
            Regime::Weak(w) => w.ensemble(),
        }
    }

    fn metadata(&self) -> Value {
        match self {
            Regime::Strong(p) => json!({"n": p.n, "tau": p.tau}),
            Regime::Weak(w) => json!({"n": w.n, "alpha": w.alpha, "scaling": w.scaling, "tau": w.tau()}),
        }
    }
}

fn grid(args: &GridArgs, default: GridSpec) -> CliResult<GridSpec> {
    let g = args.grid.unwrap_or(default);
    match args.points {
        Some(p) => GridSpec::new(g.lo, g.hi, p).map_err(|e| usage("--points", e)),
        None => Ok(g),
    }
}

/// Columns shared by `density` and `edge`: exact, leading, correction,
/// composite and a scaled residual.
fn expansion_row(x: f64, exact: f64, e: Option<DensityExpansion>, residual: impl Fn(f64, &DensityExpansion) -> f64) -> Vec<f64> {
    match e {
        Some(e) => vec![x, exact, e.leading, e.correction, e.composite, residual(exact, &e)],
        None => vec![x, exact, f64::NAN, f64::NAN, f64::NAN, f64::NAN],
    }
}

fn columns(first: &'static str) -> Vec<&'static str> {
    vec![first, "exact", "leading", "correction", "composite", "residual_scaled"]
}

fn cmd_density(args: &GridArgs) -> CliResult<()> {
    let regime = Regime::from_args(&args.ensemble, Scaling::Bulk)?;
    let p = regime.ensemble();
    let nf = p.n as f64;
    let half = match regime {
        Regime::Strong(p) => 1.0 + p.tau + 0.5,
        Regime::Weak(w) => {
            if w.scaling != Scaling::Bulk {
                return Err(usage("--scaling", "the global expansion needs --scaling bulk; use `egoe edge` for the edge scaling"));
            }
            2.5
        }
    };
    let g = grid(args, GridSpec { lo: -half, hi: half, points: 201 })?;
    let xs = g.points();
    let exact = rn_grid(&p, &xs)?;
    let mut table = Table::new("density", json!({"ensemble": regime.metadata(), "grid": g.to_string()}), columns("x"));
    table.rows = xs
        .iter()
        .zip(&exact)
        .map(|(&x, &r)| match regime {
            // N^{7/2}(R_N − N^{1/2}R⁰ₛ)
            Regime::Strong(p) => expansion_row(x, r, global_strong(p.tau, x, p.n).ok(), |r, e| nf.powf(3.5) * (r - e.composite)),
            // R_N − N R⁰_w, to be compared with R¹_w
            Regime::Weak(w) => expansion_row(x, r, global_weak(w.alpha, x, w.n).ok(), |r, e| r - nf * e.leading),
        })
        .collect();
    table.write(args.output.format, args.output.out.as_deref())?;
    Ok(())
}

fn cmd_edge(args: &GridArgs) -> CliResult<()> {
    let regime = Regime::from_args(&args.ensemble, Scaling::Edge)?;
    let nf = regime.ensemble().n as f64;
    let edge = match regime {
        Regime::Strong(p) => {
            if p.tau >= 1.0 {
                return Err(usage("--tau", "the strong edge expansion needs tau < 1"));
            }
            EdgeRegime::Strong(p)
        }
        Regime::Weak(w) => {
            if w.scaling != Scaling::Edge {
                return Err(usage("--scaling", "the weak edge expansion needs --scaling edge"));
            }
            EdgeRegime::Weak(w)
        }
    };
    let g = grid(args, GridSpec { lo: -4.0, hi: 4.0, points: 161 })?;
    let xis = g.points();
    let exact = edge_grid(&edge, &xis)?;
    let mut table = Table::new("edge", json!({"ensemble": regime.metadata(), "grid": g.to_string()}), columns("xi"));
    table.rows = xis
        .iter()
        .zip(&exact)
        .map(|(&xi, &r)| match regime {
            // N^{1/2}(R_N − R⁰)
            Regime::Strong(p) => expansion_row(xi, r, edge_strong(p.tau, xi, p.n).ok(), |r, e| nf.sqrt() * (r - e.leading)),
            // N^{1/3}(R_N − R⁰)
            Regime::Weak(w) => expansion_row(xi, r, edge_weak(w.alpha, xi, w.n).ok(), |r, e| nf.cbrt() * (r - e.leading)),
        })
        .collect();
    table.write(args.output.format, args.output.out.as_deref())?;
    Ok(())
}

fn cmd_count(args: &CountArgs) -> CliResult<()> {
    let regime = Regime::from_args(&args.ensemble, Scaling::Bulk)?;
    let p = regime.ensemble();
    let exact = expected_count_exact(&p)?;
    let asymptotic = match regime {
        Regime::Strong(p) if p.tau < 1.0 => expected_count_strong(p.tau, p.n)?,
        Regime::Strong(_) => f64::NAN,
        Regime::Weak(w) => {
            if w.scaling != Scaling::Bulk {
                return Err(usage("--scaling", "the count expansion needs --scaling bulk"));
            }
            expected_count_weak(w.alpha, w.n)?
        }
    };
    let mut row = vec![exact, asymptotic, exact - asymptotic, f64::NAN, f64::NAN, f64::NAN];
    if let Some(trials) = args.mc {
        let cfg = SampleConfig::new(p.n, p.tau, trials, args.seed).map_err(|e| usage("--mc", e))?;
        let (mean, se) = expected_count_mc(&cfg)?;
        row[3..].copy_from_slice(&[mean, se, (mean - exact) / se]);
    }
    let params = json!({"ensemble": regime.metadata(), "mc_trials": args.mc, "seed": args.seed});
    let mut table = Table::new("count", params, vec!["exact", "asymptotic", "discrepancy", "mc_mean", "mc_stderr", "mc_z"]);
    table.rows.push(row);
    table.write(args.output.format, args.output.out.as_deref())?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let suites = parse_suites(&args.suite).map_err(|e| usage("--suite", e))?;
    let checks: Vec<Check> = suites.iter().flat_map(|s| s.run()).collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut sink: Box<dyn Write> = match &args.output.out {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match args.output.format {
        Format::Json => {
            let v = json!({"tool": "egoe", "version": env!("CARGO_PKG_VERSION"), "checks": checks, "failed": failed});
            serde_json::to_writer_pretty(&mut sink, &v).map_err(io::Error::from)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            writeln!(sink, "suite,check,passed,detail")?;
            for c in &checks {
                writeln!(sink, "{},\"{}\",{},\"{}\"", c.suite, c.name.replace('"', "\"\""), c.passed, c.detail.replace('"', "\"\""))?;
            }
        }
    }
    sink.flush()?;
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

fn cmd_sample(args: &SampleArgs) -> CliResult<()> {
    let cfg = SampleConfig::new(args.n, args.tau.0, args.trials, args.seed).map_err(|e| usage("--n/--tau/--trials", e))?;
    let params = json!({"n": cfg.n, "tau": cfg.tau, "trials": cfg.trials, "seed": cfg.seed, "real_tol": cfg.real_tol});
    let mut table = Table::new("sample", params, vec!["trial", "index", "value"]);
    const CHUNK: u64 = 1024;
    let mut csv: Option<Box<dyn Write>> = match args.output.format {
        Format::Csv => {
            let mut w: Box<dyn Write> = match &args.output.out {
                Some(p) => Box::new(io::BufWriter::new(std::fs::File::create(p)?)),
                None => Box::new(io::BufWriter::new(io::stdout().lock())),
            };
            writeln!(w, "trial,index,value")?;
            Some(w)
        }
        Format::Json => None,
    };
    let mut start = 0;
    while start < cfg.trials {
        let end = (start + CHUNK).min(cfg.trials);
        let batch = (start..end)
            .into_par_iter()
            .map(|t| sample_real_eigenvalues(&cfg, t))
            .collect::<Result<Vec<_>, Error>>()?;
        for (t, values) in (start..end).zip(batch) {
            for (i, v) in values.into_iter().enumerate() {
                match &mut csv {
                    Some(w) => writeln!(w, "{t},{i},{}", output::format_number(v))?,
                    None => table.rows.push(vec![t as f64, i as f64, v]),
                }
            }
        }
        start = end;
    }
    match csv {
        Some(mut w) => w.flush()?,
        None => table.write(Format::Json, args.output.out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Density(a) => cmd_density(a),
        Command::Edge(a) => cmd_edge(a),
        Command::Count(a) => cmd_count(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sample(a) => cmd_sample(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
