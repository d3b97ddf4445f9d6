//! Command-line front end. Every subcommand prints a human-readable table
//! and can write a JSON report (`--json PATH`); numeric tables are CSV.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parse
//! error, 3 numeric runtime error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use glob::Pattern;
use rayon::prelude::*;
use serde::Serialize;

use crate::eqcat::{
    derive_determining_tau1, fast_diffusion, potential_fast_diffusion, reference_tau1_system, systems_equivalent,
    EqError,
};
use crate::expr::{parse, Verdict, ZeroTest, DEFAULT_SEED};
use crate::fdsim::{convergence_study, simulate, ErrorReport, Grid, Law, Scheme, SimError, SIGMA};
use crate::opcat::operator_catalog;
use crate::reduce::{reduction_catalog, without_invariants};
use crate::solcat::{arrow_table, check_arrow, solution_catalog, SolutionPair, RESIDUAL_TOLERANCE};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fdsym", version, about = "Symmetry catalogs and numerical checks for u_t = (u^-1 u_x)_x")]
pub struct Cli {
    /// Seed for numeric probing.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Relative tolerance overriding each check's default.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Leave timestamps and wall times out of the report.
    #[arg(long, global = true)]
    pub no_timestamps: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CatalogKind {
    All,
    Operators,
    Solutions,
    Arrows,
    Reductions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Explicit,
    Implicit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog keys.
    Catalog {
        #[arg(value_enum, default_value = "all")]
        kind: CatalogKind,
    },
    /// Check catalog operators against their equations (glob over keys).
    VerifyOperators { filter: String },
    /// Check catalog solutions: both equations, the potential system and
    /// alternative forms.
    VerifySolutions {
        filter: String,
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<i64>,
    },
    /// Determining equations of `∂_t + ξ∂_x + θ∂_v` for `v_t = f(v_x)v_xx`;
    /// `f` is rational in `vx` (or `v_x`).
    Derive { f: String },
    /// Check hodograph arrows between catalog solutions.
    Arrows {
        #[arg(long)]
        all: bool,
        ids: Vec<String>,
    },
    /// Reduce along catalog operators and check the witness solutions.
    Reduce {
        #[arg(default_value = "*")]
        filter: String,
    },
    /// Finite-difference run against a catalog solution; prints CSV.
    Simulate {
        /// Solution id such as `lie.6` or `lie.4.eps=1`.
        #[arg(long)]
        oracle: String,
        /// `u` evolves the fast diffusion equation, `v` its potential form.
        #[arg(long, default_value = "u")]
        var: String,
        #[arg(long, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true)]
        t1: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
        x0: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        x1: f64,
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[arg(long, value_enum, default_value = "explicit")]
        scheme: SchemeArg,
        /// 1 for a single run, at least 3 for a convergence study.
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long, default_value_t = SIGMA)]
        sigma: f64,
        /// Time step of the implicit scheme (defaults to h).
        #[arg(long)]
        dt: Option<f64>,
        /// Write the CSV table here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub key: String,
    pub check: String,
    pub verdict: &'static str,
    pub passed: bool,
    pub max_residual: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    fn new(key: &str, check: &str, verdict: Verdict, max_residual: f64, samples: usize) -> Record {
        Record {
            key: key.into(),
            check: check.into(),
            verdict: verdict.as_str(),
            passed: verdict.is_zero(),
            max_residual,
            samples,
            wall_time_ms: None,
            detail: None,
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Record {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerificationReport {
    fn new(command: &str, cli: &Cli, mut records: Vec<Record>) -> VerificationReport {
        records.sort_by(|a, b| (&a.key, &a.check).cmp(&(&b.key, &b.check)));
        if cli.no_timestamps {
            for r in &mut records {
                r.wall_time_ms = None;
            }
        }
        let passed = records.iter().filter(|r| r.passed).count();
        let timestamp =
            (!cli.no_timestamps).then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            tool: "fdsym",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed: cli.seed,
            tolerance: cli.tolerance,
            timestamp,
            summary: Summary { total: records.len(), passed, failed: records.len() - passed },
            records,
        }
    }
}

/// Failure of a subcommand with its exit code.
#[derive(Debug)]
struct Fail(i32, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn runtime(msg: impl Into<String>) -> Fail {
    Fail(EXIT_RUNTIME, msg.into())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

fn pattern(filter: &str) -> Result<Pattern, Fail> {
    Pattern::new(filter).map_err(|e| usage(format!("bad filter {filter:?}: {e}")))
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(report) => {
            if let Some(path) = &cli.json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_RUNTIME;
                }
            }
            let s = &report.summary;
            if s.total > 0 {
                let _ = writeln!(out, "{}/{} passed", s.passed, s.total);
            }
            if s.failed > 0 {
                EXIT_FAILURES
            } else {
                EXIT_OK
            }
        }
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<VerificationReport, Fail> {
    let (name, records) = match &cli.command {
        Command::Catalog { kind } => ("catalog", catalog(*kind, out)),
        Command::VerifyOperators { filter } => ("verify-operators", verify_operators(cli, filter, out)?),
        Command::VerifySolutions { filter, eps, mu } => {
            ("verify-solutions", verify_solutions(cli, filter, *eps, *mu, out)?)
        }
        Command::Derive { f } => ("derive", derive(f, out)?),
        Command::Arrows { all, ids } => ("arrows", arrows(cli, *all, ids, out)?),
        Command::Reduce { filter } => ("reduce", reduce(filter, out)?),
        Command::Simulate { .. } => ("simulate", simulate_cmd(cli, out)?),
    };
    Ok(VerificationReport::new(name, cli, records))
}

fn print_records(out: &mut dyn Write, records: &[Record]) {
    let mut sorted: Vec<&Record> = records.iter().collect();
    sorted.sort_by(|a, b| (&a.key, &a.check).cmp(&(&b.key, &b.check)));
    for r in sorted {
        let mark = if r.passed { "ok  " } else { "FAIL" };
        let _ = write!(out, "{mark} {:<52} {:<18} {:<20} max={:.3e} n={}", r.key, r.check, r.verdict, r.max_residual, r.samples);
        if let Some(d) = &r.detail {
            let _ = write!(out, "  {d}");
        }
        let _ = writeln!(out);
    }
}

fn catalog(kind: CatalogKind, out: &mut dyn Write) -> Vec<Record> {
    let want = |k: CatalogKind| kind == CatalogKind::All || kind == k;
    let mut keys: Vec<String> = Vec::new();
    if want(CatalogKind::Operators) {
        keys.extend(operator_catalog().into_iter().map(|c| c.key));
    }
    if want(CatalogKind::Solutions) {
        keys.extend(solution_catalog().iter().map(SolutionPair::id));
    }
    if want(CatalogKind::Arrows) {
        keys.extend(arrow_table().into_iter().map(|a| format!("{}  {}", a.id, a.label)));
    }
    if want(CatalogKind::Reductions) {
        keys.extend(reduction_catalog().into_iter().map(|r| r.key));
        keys.extend(without_invariants().into_iter().map(|k| format!("{k}  (no invariant pair)")));
    }
    for k in &keys {
        let _ = writeln!(out, "{k}");
    }
    Vec::new()
}

fn verify_operators(cli: &Cli, filter: &str, out: &mut dyn Write) -> Result<Vec<Record>, Fail> {
    let p = pattern(filter)?;
    let items: Vec<_> = operator_catalog().into_iter().filter(|c| p.matches(&c.key)).collect();
    if items.is_empty() {
        return Err(usage(format!("no operator matches {filter:?}")));
    }
    let test = ZeroTest { seed: cli.seed, tolerance: cli.tolerance.unwrap_or(1e-9), ..ZeroTest::default() };
    let records: Vec<Record> = items
        .par_iter()
        .map(|c| {
            let (r, ms) = timed(|| c.verify(&test));
            let mut rec = match r {
                Ok(z) => Record::new(&c.key, "invariance", z.verdict, z.max_abs, z.probes),
                Err(e) => Record::new(&c.key, "invariance", Verdict::NumericallyNonzero, f64::NAN, 0).detail(e.to_string()),
            };
            rec.wall_time_ms = Some(ms);
            rec
        })
        .collect();
    print_records(out, &records);
    Ok(records)
}

fn verify_solutions(
    cli: &Cli,
    filter: &str,
    eps: Option<i64>,
    mu: Option<i64>,
    out: &mut dyn Write,
) -> Result<Vec<Record>, Fail> {
    let p = pattern(filter)?;
    let items: Vec<SolutionPair> = solution_catalog()
        .into_iter()
        .filter(|s| p.matches(&s.key) || p.matches(&s.id()))
        .filter(|s| eps.is_none_or(|e| s.params.get("eps") == Some(&e)))
        .filter(|s| mu.is_none_or(|m| s.params.get("mu") == Some(&m)))
        .collect();
    if items.is_empty() {
        return Err(usage(format!("no solution matches {filter:?}")));
    }
    let tol = cli.tolerance.unwrap_or(RESIDUAL_TOLERANCE);
    let records: Vec<Record> = items
        .par_iter()
        .map(|s| {
            let (r, ms) = timed(|| s.verify_with(cli.seed, tol));
            let mut rec = match r {
                Ok(z) => Record::new(&s.id(), "residuals", z.verdict, z.max_abs, z.probes),
                Err(e) => Record::new(&s.id(), "residuals", Verdict::NumericallyNonzero, f64::NAN, 0).detail(e.to_string()),
            };
            rec.wall_time_ms = Some(ms);
            rec
        })
        .collect();
    print_records(out, &records);
    Ok(records)
}

fn derive(input: &str, out: &mut dyn Write) -> Result<Vec<Record>, Fail> {
    let text = input.replace("vx", "v_x").replace("v__x", "v_x");
    let f = parse(&text).map_err(|e| usage(format!("cannot parse {input:?}: {e}")))?;
    let sys = derive_determining_tau1(&f).map_err(|e| match e {
        EqError::NotRational(_) | EqError::WrongVariable(_) | EqError::ZeroNonlinearity => usage(e.to_string()),
        other => runtime(other.to_string()),
    })?;
    let _ = writeln!(out, "determining equations for Q = ∂_t + xi ∂_x + theta ∂_v, f = {f}:");
    for (k, r) in sys.residuals.iter().enumerate() {
        let _ = writeln!(out, "  ({}) {r} = 0", k + 1);
    }
    let mut records = vec![];
    let fast = parse("1/v_x").expect("literal");
    if f == fast {
        let same = systems_equivalent(&sys, &reference_tau1_system());
        let _ = writeln!(out, "matches reference system: {}", if same { "yes" } else { "no" });
        let verdict = if same { Verdict::ProvedZero } else { Verdict::ProvedNonzero };
        records.push(Record::new("derive.1/v_x", "reference-system", verdict, 0.0, 0));
    }
    Ok(records)
}

fn arrows(cli: &Cli, all: bool, ids: &[String], out: &mut dyn Write) -> Result<Vec<Record>, Fail> {
    let table = arrow_table();
    let chosen: Vec<_> = if all || ids.is_empty() {
        table
    } else {
        let mut v = Vec::new();
        for id in ids {
            let p = pattern(id)?;
            let hit: Vec<_> = table.iter().filter(|a| p.matches(&a.id)).cloned().collect();
            if hit.is_empty() {
                return Err(usage(format!("unknown arrow {id:?}")));
            }
            v.extend(hit);
        }
        v
    };
    let records: Vec<Record> = chosen
        .par_iter()
        .map(|a| {
            let (r, ms) = timed(|| check_arrow(a));
            let mut rec = match r {
                Ok(rep) => {
                    let worst = rep.max_u_error.max(rep.v_spread);
                    let verdict = match cli.tolerance {
                        Some(t) if worst > t => Verdict::NumericallyNonzero,
                        Some(_) => Verdict::NumericallyZero,
                        None => rep.verdict,
                    };
                    Record::new(&a.id, "hodograph", verdict, worst, rep.samples).detail(a.label)
                }
                Err(e) => Record::new(&a.id, "hodograph", Verdict::NumericallyNonzero, f64::NAN, 0).detail(e.to_string()),
            };
            rec.wall_time_ms = Some(ms);
            rec
        })
        .collect();
    print_records(out, &records);
    Ok(records)
}

fn reduce(filter: &str, out: &mut dyn Write) -> Result<Vec<Record>, Fail> {
    let p = pattern(filter)?;
    let items: Vec<_> = reduction_catalog().into_iter().filter(|r| p.matches(&r.key)).collect();
    if items.is_empty() {
        return Err(usage(format!("no reduction matches {filter:?}")));
    }
    let mut records = Vec::new();
    for r in &items {
        match r.verify() {
            Ok((ode, wit)) => {
                let _ = writeln!(out, "{}: {} = 0", r.key, ode.residual);
                records.push(Record::new(&r.key, "leftover-free", Verdict::NumericallyZero, ode.leftover_drift, 8));
                for (id, z) in wit {
                    records.push(Record::new(&r.key, &format!("witness {id}"), z.verdict, z.max_abs, z.probes));
                }
            }
            Err(e) => records.push(Record::new(&r.key, "reduce", Verdict::NumericallyNonzero, f64::NAN, 0).detail(e.to_string())),
        }
    }
    print_records(out, &records);
    Ok(records)
}

fn simulate_cmd(cli: &Cli, out: &mut dyn Write) -> Result<Vec<Record>, Fail> {
    let Command::Simulate { oracle, var, t0, t1, x0, x1, n, scheme, levels, sigma, dt, csv } = &cli.command else {
        unreachable!()
    };
    let catalog = solution_catalog();
    let found: Vec<&SolutionPair> = match catalog.iter().find(|s| s.id() == *oracle) {
        Some(s) => vec![s],
        None => catalog.iter().filter(|s| s.key == *oracle).collect(),
    };
    let pair = match found.as_slice() {
        [s] => *s,
        [] => return Err(usage(format!("unknown oracle {oracle:?}"))),
        many => {
            let ids: Vec<String> = many.iter().map(|s| s.id()).collect();
            return Err(usage(format!("{oracle:?} is ambiguous: {}", ids.join(", "))));
        }
    };
    let (law, sol, eq) = match var.as_str() {
        "u" => (Law::Diffusion, &pair.u, fast_diffusion()),
        "v" => (Law::Filtration, &pair.v, potential_fast_diffusion()),
        other => return Err(usage(format!("--var must be u or v, not {other:?}"))),
    };
    if *levels == 2 || *levels == 0 {
        return Err(usage("--levels must be 1 or at least 3"));
    }
    let sim = |e: SimError| match e {
        SimError::BadGrid(_) | SimError::TooFewLevels(_) => usage(e.to_string()),
        other => runtime(other.to_string()),
    };
    let scheme = match scheme {
        SchemeArg::Explicit => Scheme::Explicit,
        SchemeArg::Implicit => Scheme::ImplicitNewton,
    };
    let grid = match scheme {
        Scheme::Explicit => Grid::stable(law, sol, (*x0, *x1), *n, (*t0, *t1), *sigma),
        Scheme::ImplicitNewton => {
            let h = (x1 - x0) / (n.max(&2) - 1) as f64;
            Grid::new((*x0, *x1), *n, (*t0, *t1), dt.unwrap_or(h), *sigma)
        }
    }
    .map_err(sim)?;
    let report: ErrorReport = if *levels == 1 {
        simulate(&eq, sol, &grid, scheme)
    } else {
        convergence_study(&eq, sol, &grid, *levels, scheme)
    }
    .map_err(sim)?;
    let table = report.to_csv();
    match csv {
        Some(path) => std::fs::write(path, &table).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = out.write_all(table.as_bytes());
        }
    }
    let record = match report.observed_order() {
        Some(p) => {
            let ok = (p - 2.0).abs() <= cli.tolerance.unwrap_or(0.3);
            let v = if ok { Verdict::NumericallyZero } else { Verdict::NumericallyNonzero };
            Record::new(&pair.id(), "convergence-order", v, (p - 2.0).abs(), report.levels.len())
                .detail(format!("order {p:.3}"))
        }
        None => {
            let ok = report.max_err() <= cli.tolerance.unwrap_or(1e-3);
            let v = if ok { Verdict::NumericallyZero } else { Verdict::NumericallyNonzero };
            Record::new(&pair.id(), "max-error", v, report.max_err(), grid.n)
        }
    };
    Ok(vec![record])
}
