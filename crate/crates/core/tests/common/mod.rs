#![allow(dead_code)]

use freefield::harness::oracle::independent_dquantum;
use freefield::harness::parse::{parse_cochain, parse_scalar};
use serde_json::Value;

/// Every certificate object in a witness: those with input, normal form,
/// homotopy and the parameters.
pub fn certificates(v: &Value) -> Vec<&Value> {
    let mut out = Vec::new();
    collect(v, &mut out);
    out
}

fn collect<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
    match v {
        Value::Object(map) => {
            if ["input", "normal_form", "homotopy", "alpha", "hbar"].iter().all(|k| map.contains_key(*k)) {
                out.push(v);
            }
            map.values().for_each(|x| collect(x, out));
        }
        Value::Array(xs) => xs.iter().for_each(|x| collect(x, out)),
        _ => {}
    }
}

/// Parses the serialized strings back and checks
/// `input - normal_form = d_hbar(homotopy)` with the oracle's differential.
pub fn reverify(cert: &Value) -> bool {
    let field = |k: &str| cert[k].as_str().expect("string field");
    let (Ok(input), Ok(nf), Ok(h)) = (
        parse_cochain(field("input")),
        parse_cochain(field("normal_form")),
        parse_cochain(field("homotopy")),
    ) else {
        return false;
    };
    let (Ok(alpha), Ok(hbar)) = (parse_scalar(field("alpha")), parse_scalar(field("hbar"))) else {
        return false;
    };
    &input - &nf == independent_dquantum(&h, &alpha, &hbar)
}

/// Rechecks every certificate in the witness; returns how many there were.
pub fn reverify_all(witness: &Value) -> Result<usize, String> {
    let certs = certificates(witness);
    for c in &certs {
        if !reverify(c) {
            return Err(format!("certificate does not reverify: {c}"));
        }
    }
    Ok(certs.len())
}
