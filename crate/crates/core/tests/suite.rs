mod common;

use freefield::harness::checks::{check_ids, run_all, run_check, run_checks, CheckConfig};
use freefield::harness::report::{exit_code, to_json, CheckResult, Status};
use freefield::scalars::rational;
use serde_json::Value;

fn without_elapsed(results: &[CheckResult]) -> Value {
    let mut v: Value = serde_json::from_str(&to_json(results)).unwrap();
    for r in v.as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("elapsed");
    }
    v
}

#[test]
fn full_suite_passes_with_rechecked_witnesses() {
    let results = run_all(&CheckConfig::default());
    assert_eq!(results.len(), 23);
    assert_eq!(exit_code(&results), 0);
    let mut total = 0;
    for r in &results {
        assert_eq!(r.status, Status::Pass, "{}: {:?}", r.id, r.witness);
        total += common::reverify_all(r.witness.as_ref().unwrap()).unwrap();
    }
    assert!(total >= 25, "only {total} certificates");
}

#[test]
fn suite_passes_at_specialized_parameters() {
    let cfg = CheckConfig {
        alpha: Some(rational(2, 1)),
        hbar: Some(rational(1, 1)),
        seed: 7,
    };
    let ids = ["dsq-zero", "massive-commutator", "time-evolution-matrix", "weyl-iso", "confluence", "anti-involution"];
    for r in run_checks(&ids, &cfg).unwrap() {
        assert_eq!(r.status, Status::Pass, "{}: {:?}", r.id, r.witness);
        common::reverify_all(r.witness.as_ref().unwrap()).unwrap();
    }
}

#[test]
fn reports_are_deterministic_modulo_elapsed() {
    let ids = ["dsq-zero", "confluence", "gamma-equivariance", "general-fact-4.3", "star-associativity"];
    let cfg = CheckConfig { seed: 42, ..Default::default() };
    let a = run_checks(&ids, &cfg).unwrap();
    let b = run_checks(&ids, &cfg).unwrap();
    assert_eq!(without_elapsed(&a), without_elapsed(&b));
    let order: Vec<&str> = a.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(order, ids);
}

#[test]
fn unknown_check_is_an_error() {
    assert!(run_check("nonexistent", &CheckConfig::default()).is_err());
    assert_eq!(check_ids().count(), 23);
}

#[test]
fn tampered_certificate_is_rejected() {
    let r = run_check("homotopy-certificate-3.5", &CheckConfig::default()).unwrap();
    let mut cert = r.witness.as_ref().unwrap()["certificate"].clone();
    assert!(common::reverify(&cert));
    cert["normal_form"] = Value::from("2*hbar");
    assert!(!common::reverify(&cert));

    let failing = CheckResult {
        status: Status::Fail,
        witness: Some(serde_json::json!({ "counterexample": cert })),
        ..r
    };
    assert_eq!(exit_code(&[failing]), 1);
}
