use serde::{Deserialize, Serialize};
use symreg::regseq::{
    n3_complete_conditions, n3_power_prediction, n4_power_conditions, normalize, DegreeSet,
    Family, Status, Verdict,
};

/// One verdict as written to stdout and to the cache.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// `p` or `h`.
    pub family: String,
    pub n: usize,
    pub degrees: Vec<u64>,
    pub status: String,
    pub method: String,
    /// The conjectured answer, where a conjecture covers the set.
    pub predicted: Option<bool>,
    /// `status` agrees with `predicted`; a probable negative counts as not
    /// regular.
    pub agree: Option<bool>,
    pub critical_degree: u64,
    pub rank: Option<u64>,
    pub expected_rank: Option<u64>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub elapsed_ms: f64,
}

/// Conjectured regularity: `6 | abc` for three power sums, conditions
/// (1)-(3) for four power sums (after dividing by the gcd), and the three
/// conditions for three complete symmetric polynomials.
pub fn predict(set: &DegreeSet) -> Option<bool> {
    match (set.family(), set.n()) {
        (Family::Power, 3) => Some(n3_power_prediction(&normalize(set).ok()?.1)),
        (Family::Power, 4) => Some(n4_power_conditions(&normalize(set).ok()?.1).iter().all(|c| *c)),
        (Family::Complete, 3) => Some(n3_complete_conditions(set).iter().all(|c| *c)),
        _ => None,
    }
}

impl ResultRecord {
    pub fn new(set: &DegreeSet, verdict: &Verdict, seed: u64) -> Self {
        let predicted = predict(set);
        let rank = verdict.rank.as_ref();
        ResultRecord {
            family: set.family().letter().to_string(),
            n: set.n(),
            degrees: set.degrees().to_vec(),
            status: verdict.status.as_str().to_string(),
            method: verdict.method.as_str().to_string(),
            predicted,
            agree: predicted.map(|p| p == verdict.status.is_regular()),
            critical_degree: verdict.critical_degree,
            rank: rank.map(|r| r.rank),
            expected_rank: rank.map(|r| r.expected_rank),
            primes: verdict.primes().to_vec(),
            seed,
            elapsed_ms: (verdict.elapsed.as_secs_f64() * 1e6).round() / 1e3,
        }
    }

    pub fn status(&self) -> Option<Status> {
        self.status.parse().ok()
    }

    pub fn degree_set(&self) -> Option<DegreeSet> {
        let family: Family = self.family.parse().ok()?;
        DegreeSet::new(family, self.n, self.degrees.clone()).ok()
    }

    /// Fields are well-formed: the family, status and degrees parse.
    pub fn is_valid(&self) -> bool {
        self.status().is_some() && self.degree_set().is_some()
    }
}
