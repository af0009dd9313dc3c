use std::time::Instant;

use bielliptic::report::*;
use serde_json::Value;

fn machine(r: &Report) -> Vec<u8> {
    let mut buf = Vec::new();
    emit_report(r, Format::Machine, &mut buf).unwrap();
    buf
}

fn statuses(r: &Report) -> Vec<(String, CheckStatus)> {
    r.checks.iter().map(|c| (c.check_id.clone(), c.status)).collect()
}

#[test]
fn default_reproduce() {
    let start = Instant::now();
    let r = run_reproduce(&RunConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let mut human = Vec::new();
    emit_report(&r, Format::Human, &mut human).unwrap();
    println!("{}", String::from_utf8_lossy(&human));
    println!("reproduce took {elapsed:?}");

    let not_pass: Vec<_> = statuses(&r).into_iter().filter(|(_, s)| *s != CheckStatus::Pass).collect();
    assert_eq!(not_pass, vec![("rank-zero".to_string(), CheckStatus::Assumed)]);
    assert_eq!(r.totals.assumed, 1);
    assert_eq!(r.verdict.as_deref(), Some("CONFIRMED-MODULO-ASSUMPTIONS"));
    assert_eq!(r.assumptions, vec!["rank J(Q) = 0".to_string()]);
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.checks.len(), 20);

    let doc: Value = serde_json::from_slice(&machine(&r)).unwrap();
    let four = doc["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == "fourcover").unwrap();
    let as_arrays = |m: [[i64; 4]; 4]| serde_json::to_value(m).unwrap();
    assert_eq!(four["payload"]["A"], as_arrays(REFERENCE_A));
    assert_eq!(four["payload"]["B"], as_arrays(REFERENCE_B));
    for c in doc["checks"].as_array().unwrap() {
        for key in ["check_id", "anchor", "status", "payload", "ms"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn machine_output_is_reproducible_and_round_trips() {
    let config = RunConfig { height: 10, ..RunConfig::default() };
    let a = run_reproduce(&config).unwrap();
    let b = run_reproduce(&config).unwrap();
    let bytes = machine(&a);
    assert_eq!(bytes, machine(&b));
    let back: Report = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(back, a);
}

#[test]
fn anchors_occur_in_the_source_text() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.md")).unwrap();
    for (id, a) in ANCHORS {
        assert!(!a.is_empty());
        assert!(text.contains(a), "anchor of {id} not found: {a}");
    }
    for w in &Reference::default().witnesses {
        let a = witness_anchor(w);
        assert!(text.contains(&a), "{a}");
    }
}

#[test]
fn unit_epsilon_fails_admissibility() {
    let mut config = RunConfig { height: 5, ..RunConfig::default() };
    config.epsilon = ["1".into(), "0".into(), "0".into(), "0".into()];
    let r = run(Command::Fourcover, &config).unwrap();
    let eps = r.check("epsilon-norm").unwrap();
    assert_eq!(eps.status, CheckStatus::Fail);
    assert_eq!(eps.payload["norm_over_a"], "1/3");
    assert_eq!(r.check("fourcover").unwrap().status, CheckStatus::Fail);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn withheld_rank_changes_only_the_verdict() {
    let granted = run_reproduce(&RunConfig { height: 10, ..RunConfig::default() }).unwrap();
    let withheld =
        run_reproduce(&RunConfig { height: 10, assume_rank_zero: false, ..RunConfig::default() }).unwrap();
    assert_eq!(withheld.verdict.as_deref(), Some("NOT-ESTABLISHED"));
    assert!(withheld.assumptions.is_empty());
    let v = withheld.check("adelic-verdict").unwrap();
    assert_eq!(v.payload["failing"], "3d");
    for (a, b) in granted.checks.iter().zip(&withheld.checks) {
        if a.check_id != "rank-zero" && a.check_id != "adelic-verdict" {
            assert_eq!(a, b);
        }
    }
    assert_eq!(withheld.exit_code(), 0);
}

#[test]
fn subcommands_select_checks() {
    let config = RunConfig { height: 5, ..RunConfig::default() };
    let ids = |c| run(c, &config).unwrap().checks.iter().map(|x| x.check_id.clone()).collect::<Vec<_>>();
    assert_eq!(ids(Command::Resolvent), ["resolvent", "jacobian-identification", "torsion", "irreducibility"]);
    assert_eq!(ids(Command::Fourcover), ["epsilon-norm", "fourcover", "fourcover-jacobian", "bad-primes"]);
    assert_eq!(ids(Command::Search), ["quartic-search", "surface-search"]);
    assert_eq!(ids(Command::Surface), ["surface", "minus-twist", "rank-zero", "adelic-verdict"]);
}

#[test]
fn prime_override_and_depth_cap() {
    let config = RunConfig { primes: Some(vec![5, 7]), ..RunConfig::default() };
    let r = run(Command::Local, &config).unwrap();
    assert_eq!(r.check("local-fourcover").unwrap().payload["primes"], serde_json::json!([5, 7]));
    assert_eq!(r.exit_code(), 0);

    let capped = RunConfig { depth_cap: Some(1), primes: Some(vec![2]), reference: None, ..RunConfig::default() };
    let r = run(Command::Local, &capped).unwrap();
    assert!(r.resource_limited);
    assert_eq!(r.exit_code(), 3);

    let bad = RunConfig { primes: Some(vec![4]), ..RunConfig::default() };
    assert!(run(Command::Local, &bad).is_err());
}
