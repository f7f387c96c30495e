//! Command-line front end: single checks, conjecture scans, the 3-adic
//! appendix scan, coefficient tables and Hilbert functions.

pub mod cache;
pub mod output;
pub mod record;
pub mod scan;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use symreg::appendix::{verify_nonvanishing, NonvanishingRow};
use symreg::arith::is_integer;
use symreg::regseq::{
    critical_degree, hilbert_function, is_regular_with, Basis, CheckOptions, DegreeSet, Family,
    Strategy,
};
use symreg::symfunc::{a_coefficient, c_growth_check, f_polynomial, reduce_mod_p1_p6_upto};

use crate::cache::Cache;
use crate::output::{Emitter, Format};
use crate::record::ResultRecord;
use crate::scan::{run_scan, ScanJob, Target};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DISAGREEMENT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// e-basis cross-check of `a_m` is limited to this `m`.
const EBASIS_LIMIT: u64 = 200;

#[derive(Debug, Parser)]
#[command(name = "regseq", version, about = "Regular sequences of symmetric polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide one degree set.
    Check {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a conjecture on every degree set up to a bound.
    Scan {
        #[arg(long)]
        target: Target,
        /// Largest degree.
        #[arg(long)]
        max: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exact 3-adic checks for 4 <= h <= hmax.
    Appendix {
        #[arg(long, default_value_t = 2000)]
        hmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Tables of a_m and f_m, and positivity of c_d.
    Coeffs {
        #[arg(long)]
        mmax: Option<u64>,
        #[arg(long)]
        dmax: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Hilbert function of the quotient by the generators, degrees 0..=max
    /// (default: the critical degree).
    Hilbert {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// `p` (power sums) or `h` (complete symmetric polynomials).
    #[arg(short = 'f', long)]
    pub family: Family,
    /// Number of variables; must match the number of degrees.
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Comma-separated degrees.
    #[arg(short = 'A', value_delimiter = ',', required = true)]
    pub degrees: Vec<u64>,
}

impl SetArgs {
    fn degree_set(&self) -> Result<DegreeSet> {
        let n = self.n.unwrap_or(self.degrees.len());
        Ok(DegreeSet::new(self.family, n, self.degrees.clone())?)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Confirm every negative answer over the rationals.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, env = "REGSEQ_PRIMES", default_value_t = 3)]
    pub primes: usize,
    #[arg(long, env = "REGSEQ_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "REGSEQ_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[arg(long, default_value = "auto")]
    pub basis: Basis,
}

impl RunArgs {
    fn strategy(&self) -> Strategy {
        if self.strict {
            Strategy::Strict
        } else {
            Strategy::Fast
        }
    }

    fn cache(&self) -> Result<Cache> {
        match &self.cache {
            Some(p) => Cache::open(p),
            None => Ok(Cache::disabled()),
        }
    }
}

/// Error that should end the process with the usage exit code.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn summary<T: Serialize>(err: &mut impl Write, s: &T) -> Result<()> {
    writeln!(err, "{}", serde_json::to_string(s)?)?;
    Ok(())
}

/// Runs a parsed command, writing rows to `out` and summaries to `err`.
pub fn run(cli: Cli, out: impl Write, err: &mut impl Write) -> Result<u8> {
    match cli.command {
        Command::Check { set, run } => check(&set, &run, out),
        Command::Scan { target, max, run } => {
            let job = ScanJob {
                target,
                max,
                strategy: run.strategy(),
                prime_count: run.primes,
                seed: run.seed,
                basis: run.basis,
            };
            if max < target.n() as u64 {
                bail!(Usage(format!("--max must be at least {} for {target}", target.n())));
            }
            let mut cache = run.cache()?;
            let mut e = Emitter::new(run.format, out);
            let s = run_scan(&job, &mut cache, |r| e.emit(r))?;
            e.finish()?;
            summary(err, &s)?;
            Ok(if s.disagreements.is_empty() { EXIT_OK } else { EXIT_DISAGREEMENT })
        }
        Command::Appendix { hmax, format } => appendix(hmax, format, out, err),
        Command::Coeffs { mmax, dmax, format } => coeffs(mmax, dmax, format, out, err),
        Command::Hilbert { set, max, format } => {
            let s = set.degree_set().map_err(|e| Usage(e.to_string()))?;
            let top = max.unwrap_or_else(|| critical_degree(&s));
            let mut e = Emitter::new(format, out);
            for k in 0..=top {
                e.emit(&HilbertRow { k, h: hilbert_function(&s, k).to_string() })?;
            }
            e.finish()?;
            Ok(EXIT_OK)
        }
    }
}

fn check(set: &SetArgs, run: &RunArgs, out: impl Write) -> Result<u8> {
    let s = set.degree_set().map_err(|e| Usage(e.to_string()))?;
    let strategy = run.strategy();
    let mut cache = run.cache()?;
    let family = s.family().letter().to_string();
    let record = match cache.get(&family, s.degrees(), strategy) {
        Some(r) => r.clone(),
        None => {
            let opts = CheckOptions {
                strategy,
                prime_count: run.primes,
                seed: run.seed,
                basis: run.basis,
            };
            let r = ResultRecord::new(&s, &is_regular_with(&s, &opts), run.seed);
            cache.put(&r, strategy)?;
            r
        }
    };
    let mut e = Emitter::new(run.format, out);
    e.emit(&record)?;
    e.finish()?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct HilbertRow {
    k: u64,
    h: String,
}

#[derive(Serialize)]
struct AppendixRow {
    h: u64,
    case: &'static str,
    k: u64,
    f: Option<i64>,
    nonzero: bool,
    sum_valuation: Option<i64>,
    leading_valuation: Option<i64>,
    dominance: bool,
    bounds_hold: bool,
    rewrite_ok: bool,
    ultrametric_ok: bool,
    closed_form_ok: Option<bool>,
    carry_ok: Option<bool>,
    carry_shortfalls: usize,
    kummer_ok: bool,
}

impl From<&NonvanishingRow> for AppendixRow {
    fn from(r: &NonvanishingRow) -> Self {
        AppendixRow {
            h: r.h,
            case: r.tag.as_str(),
            k: r.k,
            f: r.f,
            nonzero: r.nonzero,
            sum_valuation: r.sum_valuation,
            leading_valuation: r.leading_valuation,
            dominance: r.dominance,
            bounds_hold: r.bounds_hold,
            rewrite_ok: r.rewrite_ok,
            ultrametric_ok: r.ultrametric_ok,
            closed_form_ok: r.closed_form_ok,
            carry_ok: r.carry_ok,
            carry_shortfalls: r.carry_shortfalls.len(),
            kummer_ok: r.kummer_ok,
        }
    }
}

#[derive(Serialize)]
struct AppendixSummary {
    h_max: u64,
    passed: bool,
    zeros: Vec<u64>,
    anomalies: Vec<u64>,
    check_failures: Vec<u64>,
    carry_failures: usize,
    carry_shortfalls: usize,
    max_carry_shortfall: i64,
}

fn appendix(hmax: u64, format: Format, out: impl Write, err: &mut impl Write) -> Result<u8> {
    if hmax < 4 {
        bail!(Usage("--hmax must be at least 4".into()));
    }
    let report = verify_nonvanishing(hmax)?;
    let mut e = Emitter::new(format, out);
    for r in &report.rows {
        e.emit(&AppendixRow::from(r))?;
    }
    e.finish()?;
    summary(
        err,
        &AppendixSummary {
            h_max: hmax,
            passed: report.passed(),
            zeros: report.zeros.clone(),
            anomalies: report.anomalies.clone(),
            check_failures: report.check_failures.clone(),
            carry_failures: report.carry_failures.len(),
            carry_shortfalls: report.carry_shortfall_count(),
            max_carry_shortfall: report.max_carry_shortfall(),
        },
    )?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_DISAGREEMENT })
}

#[derive(Serialize)]
struct CoeffRow {
    m: u64,
    a_m: String,
    f_m: Vec<String>,
    integral: bool,
    nonzero: bool,
    ebasis_agree: Option<bool>,
}

#[derive(Serialize, Default)]
struct CoeffSummary {
    m_max: Option<u64>,
    a_zero_at: Vec<u64>,
    non_integral: Vec<u64>,
    ebasis_mismatches: Vec<u64>,
    d_max: Option<u64>,
    c_positive: Option<bool>,
    first_nonpositive: Option<u64>,
    ratio4: Option<f64>,
}

fn coeffs(
    mmax: Option<u64>,
    dmax: Option<u64>,
    format: Format,
    out: impl Write,
    err: &mut impl Write,
) -> Result<u8> {
    let (mmax, dmax) = match (mmax, dmax) {
        (None, None) => (Some(200), Some(10_000)),
        other => other,
    };
    let mut s = CoeffSummary::default();
    let mut e = Emitter::new(format, out);
    if let Some(mmax) = mmax {
        if mmax < 2 {
            bail!(Usage("--mmax must be at least 2".into()));
        }
        let reduced = reduce_mod_p1_p6_upto(mmax.min(EBASIS_LIMIT) as usize);
        s.m_max = Some(mmax);
        for m in 2..=mmax {
            let f = f_polynomial(m)?;
            let a = a_coefficient(m)?;
            let integral = f.coeffs().iter().all(is_integer);
            let nonzero = !num_traits::Zero::is_zero(&a);
            let ebasis_agree = reduced.get(m as usize - 1).map(|r| r.coefficient == a);
            if !nonzero {
                s.a_zero_at.push(m);
            }
            if !integral {
                s.non_integral.push(m);
            }
            if ebasis_agree == Some(false) {
                s.ebasis_mismatches.push(m);
            }
            e.emit(&CoeffRow {
                m,
                a_m: a.to_string(),
                f_m: f.coeffs().iter().map(|c| c.to_string()).collect(),
                integral,
                nonzero,
                ebasis_agree,
            })?;
        }
    }
    e.finish()?;
    if let Some(dmax) = dmax {
        if dmax < 4 {
            bail!(Usage("--dmax must be at least 4".into()));
        }
        let g = c_growth_check(dmax)?;
        s.d_max = Some(dmax);
        s.c_positive = Some(g.exact_positive && g.c2_zero && g.c3_zero);
        s.first_nonpositive = g.first_nonpositive;
        s.ratio4 = Some(g.ratio4);
    }
    summary(err, &s)?;
    let ok = s.a_zero_at.iter().all(|&m| m == 6)
        && s.non_integral.is_empty()
        && s.ebasis_mismatches.is_empty()
        && s.c_positive != Some(false);
    Ok(if ok { EXIT_OK } else { EXIT_DISAGREEMENT })
}
