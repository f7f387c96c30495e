use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn regseq(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_regseq"));
    c.args(args);
    for var in ["REGSEQ_SEED", "REGSEQ_PRIMES", "REGSEQ_CACHE"] {
        c.env_remove(var);
    }
    for (k, v) in envs {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("jsonl"))
        .collect()
}

fn summary(o: &Output) -> Value {
    let err = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(err.lines().last().expect("summary line")).expect("json summary")
}

fn without_elapsed(o: &Output) -> String {
    lines(o)
        .into_iter()
        .map(|mut v| {
            v.as_object_mut().unwrap().remove("elapsed_ms");
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn check_examples() {
    let o = regseq(&["check", "-f", "p", "-n", "3", "-A", "1,6,8"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = &lines(&o)[0];
    assert_eq!(r["status"], "regular");
    assert_eq!(r["degrees"], serde_json::json!([1, 6, 8]));
    assert_eq!(r["agree"], true);

    let r = &lines(&regseq(&["check", "-f", "p", "-n", "3", "-A", "1,3,5"], &[]))[0];
    assert_eq!((r["status"].as_str(), r["method"].as_str()), (Some("not-regular"), Some("factorial-filter")));

    let r = &lines(&regseq(&["check", "-f", "h", "-n", "2", "-A", "1,3"], &[]))[0];
    assert_eq!((r["status"].as_str(), r["method"].as_str()), (Some("not-regular"), Some("h-gcd-filter")));
    assert_eq!(r["predicted"], Value::Null);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["check", "-f", "p", "-A", "1,x"],
        vec!["check", "-f", "p", "-A", "1,1"],
        vec!["check", "-f", "p", "-A", "0,2"],
        vec!["check", "-f", "p", "-n", "3", "-A", "1,2"],
        vec!["check", "-f", "z", "-A", "1,2"],
        vec!["scan", "--target", "n4-power", "--max", "3"],
        vec!["scan", "--target", "n9", "--max", "5"],
        vec!["appendix", "--hmax", "3"],
        vec!["bogus"],
    ] {
        assert_eq!(regseq(&args, &[]).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn flags_override_environment() {
    let args = ["check", "-f", "p", "-A", "3,4,5"];
    let env = lines(&regseq(&args, &[("REGSEQ_SEED", "11"), ("REGSEQ_PRIMES", "2")]))[0].clone();
    assert_eq!(env["seed"], 11);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "5"]);
    let flag = lines(&regseq(&with_flag, &[("REGSEQ_SEED", "11")]))[0].clone();
    assert_eq!(flag["seed"], 5);
    assert_ne!(env["primes"], flag["primes"]);
    assert_eq!(lines(&regseq(&args, &[]))[0]["seed"], 0);
}

#[test]
fn scan_is_deterministic() {
    let args = ["scan", "--target", "n3-power", "--max", "10", "--seed", "3"];
    let a = regseq(&args, &[]);
    let b = regseq(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_elapsed(&a), without_elapsed(&b));
    let s = summary(&a);
    assert_eq!(s["disagreements"], serde_json::json!([]));
    assert_eq!(s["total"].as_u64().unwrap() as usize, lines(&a).len());
    assert!(lines(&a).iter().all(|r| r["seed"] == 3 && r["agree"] == true));
}

fn truncate_lines(path: &Path, keep: usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut kept: Vec<&str> = text.lines().take(keep).collect();
    // a half-written line, as left behind by a killed process
    let partial = text.lines().nth(keep).map(|l| &l[..l.len() / 2]).unwrap_or("{");
    kept.push(partial);
    std::fs::write(path, kept.join("\n")).unwrap();
}

#[test]
fn interrupted_scan_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_s = cache.to_str().unwrap();
    let args = ["scan", "--target", "n3-complete", "--max", "9", "--cache", cache_s];
    let full = regseq(&args, &[]);
    let total = lines(&full).len();
    truncate_lines(&cache, total / 3);
    let resumed = regseq(&args, &[]);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(without_elapsed(&full), without_elapsed(&resumed));
    let s = summary(&resumed);
    assert_eq!(s["from_cache"].as_u64().unwrap() as usize, total / 3);
    assert!(String::from_utf8_lossy(&resumed.stderr).contains("corrupt cache line"));
    // the environment variable names the same cache
    let again = regseq(&args[..5], &[("REGSEQ_CACHE", cache_s)]);
    assert_eq!(summary(&again)["from_cache"].as_u64().unwrap() as usize, total);
}

#[test]
fn strict_check_is_cached_separately() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let c = cache.to_str().unwrap();
    regseq(&["check", "-f", "p", "-A", "2,3,4", "--cache", c], &[]);
    regseq(&["check", "-f", "p", "-A", "2,3,4", "--cache", c, "--strict"], &[]);
    let text = std::fs::read_to_string(&cache).unwrap();
    let strategies: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["strategy"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(strategies, ["fast", "strict"]);
    // both lookups are now answered without writing
    regseq(&["check", "-f", "p", "-A", "2,3,4", "--cache", c], &[]);
    regseq(&["check", "-f", "p", "-A", "2,3,4", "--cache", c, "--strict"], &[]);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 2);
}

#[test]
fn formats() {
    let o = regseq(&["check", "-f", "p", "-A", "1,2", "--format", "csv"], &[]);
    let text = String::from_utf8_lossy(&o.stdout);
    let mut l = text.lines();
    assert_eq!(
        l.next(),
        Some("family,n,degrees,status,method,predicted,agree,critical_degree,rank,expected_rank,primes,seed,elapsed_ms")
    );
    assert!(l.next().unwrap().starts_with("p,2,1;2,regular,"));
    let o = regseq(&["check", "-f", "p", "-A", "1,2", "--format", "table"], &[]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("family  n  degrees"));
}

#[test]
fn hilbert_series() {
    let o = regseq(&["hilbert", "-f", "p", "-A", "1,2,3"], &[]);
    let h: Vec<String> = lines(&o).iter().map(|r| r["h"].as_str().unwrap().to_string()).collect();
    // (1-q)(1-q^2)(1-q^3)/(1-q)^3 = 1 + 2q + 2q^2 + q^3
    assert_eq!(h, ["1", "2", "2", "1", "0"]);
    let o = regseq(&["hilbert", "-f", "h", "-A", "1,3", "--max", "6"], &[]);
    assert_eq!(lines(&o).len(), 7);
}

#[test]
fn coefficient_table() {
    let o = regseq(&["coeffs", "--mmax", "40", "--dmax", "500"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows = lines(&o);
    assert_eq!(rows.len(), 39);
    assert_eq!(rows[6]["a_m"], "-10/3");
    assert!(rows.iter().all(|r| r["integral"] == true && r["ebasis_agree"] == true));
    let s = summary(&o);
    assert_eq!(s["a_zero_at"], serde_json::json!([6]));
    assert_eq!(s["c_positive"], true);
}

#[test]
fn appendix_reports_carry_shortfall() {
    let o = regseq(&["appendix", "--hmax", "60"], &[]);
    let rows = lines(&o);
    assert_eq!(rows.len(), 57);
    assert!(rows.iter().all(|r| r["nonzero"] == true && r["dominance"] == true && r["rewrite_ok"] == true));
    let s = summary(&o);
    assert_eq!(s["zeros"], serde_json::json!([]));
    assert_eq!(s["anomalies"], serde_json::json!([]));
    assert_eq!(s["max_carry_shortfall"], 1);
    // the stated Case 1 carry bound overshoots, so the scan does not pass
    assert_eq!(o.status.code(), Some(1));
}
