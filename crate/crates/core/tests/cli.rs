use std::process::Command;

use serde_json::Value;

fn freefield(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_freefield")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn parse_renders_canonically() {
    let (code, out, _) = freefield(&["parse", "3*delta[0]*delta[1] - 2*hbar*bdelta[2]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-2*hbar*bdelta[2] + 3*delta[0]*delta[1]");
    let (code, out, _) = freefield(&["parse", "bdelta[1]*bdelta[1]"]);
    assert_eq!((code, out.trim()), (0, "0"));
}

#[test]
fn parse_errors_report_positions() {
    let (code, _, err) = freefield(&["parse", "delta[0] +"]);
    assert_ne!(code, 0);
    assert!(err.contains("position 10"), "{err}");
}

#[test]
fn nf_relocates() {
    let (code, out, _) = freefield(&["nf", "delta[0]", "--interval=-4,4", "--window", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("normal form: (alpha^2 + 1 + alpha^-2)*delta[2] + (-alpha - alpha^-1)*delta[3]"));
    assert!(out.contains("homotopy: bdelta[1] + (alpha + alpha^-1)*bdelta[2]"));
    assert!(out.contains("verified: true"));
}

#[test]
fn star_commutator_pieces() {
    let (code, out, _) = freefield(&["star", "delta[2]-delta[1]", "delta[0]", "--geometry", "massless35", "--alpha", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("weyl: q*p + hbar"), "{out}");
    let (_, out2, _) = freefield(&["star", "delta[0]", "delta[2]-delta[1]", "--geometry", "massless35", "--alpha", "1"]);
    assert!(out2.contains("weyl: q*p\n"), "{out2}");
    let (code, _, err) = freefield(&["star", "delta[0]", "delta[0]", "--geometry", "nowhere"]);
    assert_ne!(code, 0);
    assert!(err.contains("unknown geometry"));
}

#[test]
fn cohomology_dimensions() {
    let (code, out, _) = freefield(&["cohomology", "--interval", "0,5", "--maxdeg", "2", "--hbar", "1", "--alpha", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("H^0 = 6"));
    assert!(out.contains("H^-1 = 0"));
    let (code, _, err) = freefield(&["cohomology", "--interval", "0,5", "--maxdeg", "1", "--alpha", "0"]);
    assert_ne!(code, 0);
    assert!(!err.is_empty());
}

#[test]
fn check_selection_and_exit_status() {
    let (code, out, _) = freefield(&["check"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), Value::Array(vec![]));

    let (code, out, _) = freefield(&["check", "--id", "massless-commutator", "--id", "relocation-4.3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "pass");
        for k in ["id", "status", "statement", "witness", "elapsed"] {
            assert!(r.get(k).is_some(), "missing {k}");
        }
    }

    let (code, _, err) = freefield(&["check", "--id", "nonexistent"]);
    assert_ne!(code, 0);
    assert!(err.contains("unknown check"));
}

#[test]
fn check_with_specialized_parameters() {
    let (code, out, _) = freefield(&["check", "--id", "massive-commutator", "--alpha", "2", "--hbar", "1/3", "--format", "text"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("pass"));
    let (code, _, _) = freefield(&["check", "--id", "dsq-zero", "--alpha", "0"]);
    assert_ne!(code, 0);
}
