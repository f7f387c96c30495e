//! Deciding whether `p_A(n)` or `h_A(n)` is a regular sequence.
//!
//! [`is_regular`] runs, in order: gcd normalization (power sums), the proven
//! necessary filters, the closed forms for two variables, the gcd criterion
//! for triples `{1, a, b}`, and finally the rank test.

mod criteria;
mod filters;
mod matrix;
mod rank;
mod witness;

pub use criteria::{
    check_pair, critical_degree, eisenstein_family_check, gcd_criterion_triple,
    n3_complete_conditions, n3_power_prediction, n4_power_conditions, normalize,
    triple_polynomial, verify_modulo1,
};
pub use filters::{
    even_part_filter, factorial_filter, h_congruence_filter, h_gcd_filter,
    hilbert_integrality_filter, hilbert_quotient, roots_of_unity_filter, subset_125_filter,
    Failure, FilterResult,
};
pub use matrix::{random_primes, rank_exact, rank_modular, SparseMatrix};
pub use rank::{
    build_degree_matrix, build_invariant_matrix, hilbert_function, ideal_membership,
    rank_test, weighted_monomials, Basis, RankOutcome, MONOMIAL_COLUMN_LIMIT,
};
pub use witness::{blocks, eval_generator, power_zero, witness_verify, RootPoint, Witness};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Power sums `p_a`.
    Power,
    /// Complete symmetric polynomials `h_a`.
    Complete,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Power => "power",
            Family::Complete => "complete",
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::Power => 'p',
            Family::Complete => 'h',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "power" => Ok(Family::Power),
            "h" | "complete" => Ok(Family::Complete),
            other => Err(Error::InvalidDegreeSet(format!("unknown family {other:?}"))),
        }
    }
}

/// `n` distinct positive degrees, one generator each, in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSet {
    family: Family,
    degrees: Vec<u64>,
}

impl DegreeSet {
    /// `degrees` must have exactly `n` entries.
    pub fn new(family: Family, n: usize, degrees: Vec<u64>) -> Result<Self> {
        if degrees.len() != n {
            return Err(Error::InvalidDegreeSet(format!(
                "{} degrees given for n = {n}",
                degrees.len()
            )));
        }
        Self::from_degrees(family, degrees)
    }

    pub fn from_degrees(family: Family, mut degrees: Vec<u64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidDegreeSet("empty degree set".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidDegreeSet("degrees must be positive".into()));
        }
        degrees.sort_unstable();
        if degrees.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDegreeSet(format!(
                "repeated degree in {degrees:?}"
            )));
        }
        if degrees.iter().any(|&a| a > u32::MAX as u64) {
            return Err(Error::InvalidDegreeSet("degree too large".into()));
        }
        Ok(DegreeSet { family, degrees })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn contains(&self, a: u64) -> bool {
        self.degrees.binary_search(&a).is_ok()
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.degrees.iter().map(u64::to_string).collect();
        write!(f, "{}{{{}}}({})", self.family.letter(), list.join(","), self.n())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Regular,
    NotRegular,
    /// Rank deficient modulo every prime tried, not confirmed over `Q`.
    ProbablyNotRegular,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Regular => "regular",
            Status::NotRegular => "not-regular",
            Status::ProbablyNotRegular => "probably-not-regular",
        }
    }

    pub fn is_regular(self) -> bool {
        self == Status::Regular
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(Status::Regular),
            "not-regular" => Ok(Status::NotRegular),
            "probably-not-regular" => Ok(Status::ProbablyNotRegular),
            other => Err(Error::Precondition(format!("unknown status {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `n = 1`.
    Trivial,
    FactorialFilter,
    HilbertIntegralityFilter,
    RootsOfUnityFilter,
    EvenPartFilter,
    Subset125Filter,
    HCongruenceFilter,
    HGcdFilter,
    ClosedForm,
    GcdCriterion,
    RankModular,
    RankExact,
}

impl Method {
    pub const ALL: [Method; 12] = [
        Method::Trivial,
        Method::FactorialFilter,
        Method::HilbertIntegralityFilter,
        Method::RootsOfUnityFilter,
        Method::EvenPartFilter,
        Method::Subset125Filter,
        Method::HCongruenceFilter,
        Method::HGcdFilter,
        Method::ClosedForm,
        Method::GcdCriterion,
        Method::RankModular,
        Method::RankExact,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::FactorialFilter => "factorial-filter",
            Method::HilbertIntegralityFilter => "hilbert-integrality-filter",
            Method::RootsOfUnityFilter => "roots-of-unity-filter",
            Method::EvenPartFilter => "even-part-filter",
            Method::Subset125Filter => "subset-125-filter",
            Method::HCongruenceFilter => "h-congruence-filter",
            Method::HGcdFilter => "h-gcd-filter",
            Method::ClosedForm => "closed-form",
            Method::GcdCriterion => "gcd-criterion",
            Method::RankModular => "rank-modular",
            Method::RankExact => "rank-exact",
        }
    }

    pub fn is_filter(self) -> bool {
        self.as_str().ends_with("-filter")
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    None,
    /// A short statement of the identity or inequality that was checked.
    Identity(String),
    Witness(Witness),
    /// `p_member` lies in the ideal of `p_g`, `g in generators` (degrees of
    /// the set actually tested).
    IdealMembership { member: u64, generators: Vec<u64> },
    Primes(Vec<u64>),
}

impl Evidence {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Evidence::Witness(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Trust modular rank deficiency (reported as probable).
    #[default]
    Fast,
    /// Confirm every deficiency by exact elimination.
    Strict,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Fast => "fast",
            Strategy::Strict => "strict",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub strategy: Strategy,
    pub prime_count: usize,
    pub seed: u64,
    pub basis: Basis,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            strategy: Strategy::Fast,
            prime_count: 3,
            seed: 0,
            basis: Basis::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub method: Method,
    pub evidence: Evidence,
    /// `sum(A) - n + 1` for the set as given.
    pub critical_degree: u64,
    /// The gcd the degrees were divided by before testing (1 for `h`).
    pub normalized_by: u64,
    pub rank: Option<RankOutcome>,
    pub elapsed: Duration,
}

impl Verdict {
    fn decided(status: Status, method: Method, evidence: Evidence, set: &DegreeSet) -> Self {
        Verdict {
            status,
            method,
            evidence,
            critical_degree: critical_degree(set),
            normalized_by: 1,
            rank: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn primes(&self) -> &[u64] {
        self.rank.as_ref().map_or(&[], |r| r.primes.as_slice())
    }
}

/// [`is_regular_with`] using the automatic basis choice.
pub fn is_regular(set: &DegreeSet, strategy: Strategy, prime_count: usize, seed: u64) -> Verdict {
    is_regular_with(
        set,
        &CheckOptions {
            strategy,
            prime_count,
            seed,
            basis: Basis::Auto,
        },
    )
}

pub fn is_regular_with(set: &DegreeSet, opts: &CheckOptions) -> Verdict {
    let start = Instant::now();
    let mut v = decide(set, opts);
    v.critical_degree = critical_degree(set);
    v.elapsed = start.elapsed();
    v
}

fn lift(f: Failure, d: u64, original: &DegreeSet) -> Verdict {
    let evidence = if d == 1 {
        f.evidence
    } else {
        match f.evidence {
            Evidence::Witness(w) => match f.point.map(|p| p.nth_root(d).to_witness()) {
                Some(Ok(lifted)) => Evidence::Witness(lifted),
                _ => Evidence::Identity(format!(
                    "{} after dividing the degrees by {d}; common zero {w}",
                    f.reason
                )),
            },
            // x_i -> x_i^d carries the membership over to the original degrees
            Evidence::IdealMembership { member, generators } => Evidence::IdealMembership {
                member: member * d,
                generators: generators.iter().map(|g| g * d).collect(),
            },
            other => other,
        }
    };
    let mut v = Verdict::decided(Status::NotRegular, f.method, evidence, original);
    v.normalized_by = d;
    v
}

fn decide(original: &DegreeSet, opts: &CheckOptions) -> Verdict {
    let (d, set) = match original.family() {
        Family::Power => normalize(original).expect("power family"),
        Family::Complete => (1, original.clone()),
    };
    let n = set.n();
    if n == 1 {
        return Verdict::decided(
            Status::Regular,
            Method::Trivial,
            Evidence::Identity("one generator in one variable".into()),
            original,
        );
    }

    let mut filters: Vec<fn(&DegreeSet) -> Result<FilterResult>> = Vec::new();
    if set.family() == Family::Complete {
        filters.push(h_gcd_filter);
        filters.push(h_congruence_filter);
    }
    filters.push(|s| Ok(factorial_filter(s)));
    filters.push(|s| Ok(hilbert_integrality_filter(s)));
    if set.family() == Family::Power {
        filters.push(roots_of_unity_filter);
        if n == 4 {
            filters.push(even_part_filter);
            filters.push(subset_125_filter);
        }
    }
    for f in filters {
        if let Ok(FilterResult::Fail(failure)) = f(&set) {
            return lift(failure, d, original);
        }
    }

    if n == 2 {
        let mut v = check_pair(original).expect("n = 2");
        v.normalized_by = d;
        return v;
    }

    if n == 3 && set.family() == Family::Power && set.degrees()[0] == 1 {
        let (a, b) = (set.degrees()[1], set.degrees()[2]);
        if (a * b) % 6 == 0 && gcd_criterion_triple(a, b) == Ok(true) {
            let mut v = Verdict::decided(
                Status::Regular,
                Method::GcdCriterion,
                Evidence::Identity(format!("gcd(f_{a}, f_{b}) = 1")),
                original,
            );
            v.normalized_by = d;
            return v;
        }
    }

    let outcome = rank_test(&set, opts.basis, opts.strategy, opts.prime_count, opts.seed);
    let (status, method) = if outcome.is_full() {
        (Status::Regular, Method::RankModular)
    } else if outcome.exact {
        (Status::NotRegular, Method::RankExact)
    } else {
        (Status::ProbablyNotRegular, Method::RankModular)
    };
    let mut v = Verdict::decided(status, method, Evidence::Primes(outcome.primes.clone()), original);
    v.normalized_by = d;
    v.rank = Some(outcome);
    v
}
