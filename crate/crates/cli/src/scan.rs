//! Conjecture scans over all degree sets up to a bound.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use symreg::regseq::{is_regular_with, Basis, CheckOptions, DegreeSet, Family, Strategy};

use crate::cache::Cache;
use crate::record::ResultRecord;

/// Jobs computed in parallel before their records are written, in order.
const CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    N3Power,
    N4Power,
    N3Complete,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::N3Power => "n3-power",
            Target::N4Power => "n4-power",
            Target::N3Complete => "n3-complete",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Target::N3Complete => Family::Complete,
            _ => Family::Power,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Target::N4Power => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "n3-power" => Ok(Target::N3Power),
            "n4-power" => Ok(Target::N4Power),
            "n3-complete" => Ok(Target::N3Complete),
            _ => Err(format!("unknown target {s:?} (n3-power, n4-power, n3-complete)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanJob {
    pub target: Target,
    pub max: u64,
    pub strategy: Strategy,
    pub prime_count: usize,
    pub seed: u64,
    pub basis: Basis,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScanSummary {
    pub target: String,
    pub max: u64,
    pub total: usize,
    pub regular: usize,
    pub not_regular: usize,
    pub probably_not_regular: usize,
    pub from_cache: usize,
    pub disagreements: Vec<Vec<u64>>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Strictly increasing `n`-tuples from `1..=max` in lexicographic order;
/// for power sums only those with gcd 1.
pub fn enumerate(target: Target, max: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, start: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for a in start..=max {
            cur.push(a);
            rec(n, a + 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(target.n(), 1, max, &mut Vec::new(), &mut out);
    if target.family() == Family::Power {
        out.retain(|t| t.iter().fold(0, |g, &x| gcd(g, x)) == 1);
    }
    out
}

fn compute(job: &ScanJob, degrees: &[u64]) -> ResultRecord {
    let set = DegreeSet::new(job.target.family(), job.target.n(), degrees.to_vec())
        .expect("enumerated sets are valid");
    let opts = CheckOptions {
        strategy: job.strategy,
        prime_count: job.prime_count,
        seed: job.seed,
        basis: job.basis,
    };
    ResultRecord::new(&set, &is_regular_with(&set, &opts), job.seed)
}

/// Runs the scan, handing each record to `sink` in enumeration order. New
/// records are appended to the cache chunk by chunk, so an interrupted scan
/// resumes where it stopped.
pub fn run_scan(
    job: &ScanJob,
    cache: &mut Cache,
    mut sink: impl FnMut(&ResultRecord) -> Result<()>,
) -> Result<ScanSummary> {
    if job.max < job.target.n() as u64 {
        bail!("--max must be at least {} for {}", job.target.n(), job.target);
    }
    let family = job.target.family().letter().to_string();
    let sets = enumerate(job.target, job.max);
    let mut summary = ScanSummary {
        target: job.target.to_string(),
        max: job.max,
        ..ScanSummary::default()
    };
    for chunk in sets.chunks(CHUNK) {
        let cached: Vec<Option<ResultRecord>> = chunk
            .iter()
            .map(|d| cache.get(&family, d, job.strategy).cloned())
            .collect();
        let fresh: Vec<Option<ResultRecord>> = chunk
            .par_iter()
            .zip(cached.par_iter())
            .map(|(d, c)| c.is_none().then(|| compute(job, d)))
            .collect();
        for (c, f) in cached.into_iter().zip(fresh) {
            let record = match (c, f) {
                (Some(c), _) => {
                    summary.from_cache += 1;
                    c
                }
                (None, Some(f)) => {
                    cache.put(&f, job.strategy)?;
                    f
                }
                (None, None) => unreachable!("computed when not cached"),
            };
            summary.total += 1;
            match record.status.as_str() {
                "regular" => summary.regular += 1,
                "not-regular" => summary.not_regular += 1,
                _ => summary.probably_not_regular += 1,
            }
            if record.agree == Some(false) {
                summary.disagreements.push(record.degrees.clone());
            }
            sink(&record)?;
        }
    }
    Ok(summary)
}
