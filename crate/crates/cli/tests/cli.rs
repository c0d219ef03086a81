use std::process::Command;

use pentagonal_cli::{parse_complex, run, EXIT_INPUT, EXIT_NUMERIC, EXIT_OK};
use pentagonal_dgf::dgf::{evaluate, MethodChoice};
use pentagonal_dgf::{Complex64, Method};
use proptest::prelude::*;
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, Vec<Value>, String) {
    let mut argv = vec!["pentadgf"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let records = if args.contains(&"csv") {
        Vec::new()
    } else {
        text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    };
    (code, records, String::from_utf8(err).unwrap())
}

fn value_of(rec: &Value) -> Complex64 {
    Complex64::new(rec["value"]["re"].as_f64().unwrap(), rec["value"]["im"].as_f64().unwrap())
}

#[test]
fn eval_example() {
    let (code, recs, _) = invoke(&["eval", "--s", "2,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs.len(), 1);
    assert!((value_of(&recs[0]).re + 1.19842171457).abs() < 1e-11);
    assert_eq!(recs[0]["method"], "explicit");
    assert_eq!(recs[0]["flagged"], false);
}

#[test]
fn dk_exact_coefficients() {
    let (code, recs, _) = invoke(&["dk", "--k", "2", "--exact"]);
    assert_eq!(code, EXIT_OK);
    let coeffs = recs[0]["extra"]["pi_coeffs"].as_array().unwrap();
    let pairs: Vec<(&str, &str)> = coeffs
        .iter()
        .map(|c| (c["rational"].as_str().unwrap(), c["sqrt3"].as_str().unwrap()))
        .collect();
    assert_eq!(pairs, vec![("-108", "0"), ("0", "16"), ("2", "0")]);
}

#[test]
fn zeros_example() {
    let (code, recs, _) = invoke(&["zeros", "--imag-max", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs.len(), 1);
    assert!((value_of(&recs[0]) - Complex64::new(0.88271, 3.91652)).norm() < 2e-4);
    assert_eq!(recs[0]["extra"]["winding_verified"], true);
}

#[test]
fn reported_method_matches_request() {
    let s = "1.5,0.5";
    for m in ["integral", "series", "mellin"] {
        let (code, recs, _) = invoke(&["eval", "--s", s, "--method", m]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(recs[0]["method"], m);
    }
    let (_, recs, _) = invoke(&["eval", "--s", "3,0", "--method", "explicit"]);
    assert_eq!(recs[0]["method"], "explicit");
    let (_, recs, _) = invoke(&["eval", "--s", "0.5,12", "--method", "auto"]);
    assert_eq!(recs[0]["method"], "mellin");
    let (_, recs, _) = invoke(&["eval", "--s", "-2.5,0", "--method", "auto"]);
    assert_eq!(recs[0]["method"], "integral");
}

#[test]
fn printed_numbers_round_trip() {
    let s = Complex64::new(0.7, 2.0);
    let internal = evaluate(s, MethodChoice::Fixed(Method::Mellin), 1e-12).unwrap();
    let (_, recs, _) = invoke(&["eval", "--s", "0.7,2", "--method", "mellin"]);
    assert_eq!(value_of(&recs[0]), internal.value);
    assert_eq!(recs[0]["err_estimate"].as_f64().unwrap(), internal.err_estimate);
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let strip = |mut v: Vec<Value>| {
        for r in &mut v {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    for args in [
        &["eval", "--s", "0.3,7"][..],
        &["phi", "--q", "0.3,0.2", "--method", "hankel"],
        &["table", "--what", "bernoulli", "--n", "12"],
    ] {
        let (_, a, _) = invoke(args);
        let (_, b, _) = invoke(args);
        assert_eq!(strip(a), strip(b));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["eval"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["eval", "--s", "1,2,3"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["eval", "--s", "-1,0", "--method", "series"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["partial-sum", "--x", "2"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["phi", "--q", "0.99"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["zeros", "--imag-max", "30"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["eval", "--s", "2,0", "--method", "bogus"]).0, EXIT_INPUT);
    // trivial zero: the integral is dominated by cancellation
    let (code, recs, err) = invoke(&["eval", "--s", "-1,0", "--method", "integral"]);
    assert_eq!(code, EXIT_NUMERIC);
    assert_eq!(recs[0]["flagged"], true);
    assert!(value_of(&recs[0]).norm() < 1e-12);
    assert!(err.contains("flagged"));
    assert_eq!(run(["pentadgf", "--help"], &mut Vec::new(), &mut Vec::new()), EXIT_OK);
}

#[test]
fn other_commands() {
    let (_, recs, _) = invoke(&["partial-sum", "--x", "6.5"]);
    assert_eq!(value_of(&recs[0]).re, -1.0);
    let (_, recs, _) = invoke(&["phi", "--q", "0.5", "--method", "product"]);
    assert!((value_of(&recs[0]).re - 0.288_788_095_086_602_4).abs() < 1e-14);
    let (_, recs, _) = invoke(&["eta", "--tau", "0,1", "--method", "hankel"]);
    assert!((value_of(&recs[0]).re - 0.768_225_422_326_056_6).abs() < 1e-12);
    let (_, recs, _) = invoke(&["table", "--what", "a", "--n", "7"]);
    let a: Vec<f64> = recs.iter().map(|r| value_of(r).re).collect();
    assert_eq!(a, vec![1.0, -1.0, -1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
    let (_, recs, _) = invoke(&["asymptotic", "--s", "-0.5"]);
    assert!((value_of(&recs[0]).re + 0.5f64.sqrt()).abs() < 1e-14);
    let (code, _, _) = invoke(&["asymptotic", "--s", "1"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn csv_output() {
    let mut out = Vec::new();
    let code = run(["pentadgf", "--format", "csv", "table", "--what", "gstar", "--n", "3"], &mut out, &mut Vec::new());
    assert_eq!(code, EXIT_OK);
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "command,input,value_re,value_im,err,method");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[2], "table,\"n=1;what=gstar\",0.5,0,0,exact");
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_pentadgf"))
        .args(["eval", "--s", "-1.5,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((value_of(&rec).re - 0.420_236_317_59).abs() < 1e-10);
    let out = Command::new(env!("CARGO_BIN_EXE_pentadgf")).args(["dk", "--k", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}

proptest! {
    #[test]
    fn complex_text_round_trips(re in proptest::num::f64::NORMAL, im in proptest::num::f64::NORMAL) {
        let z = parse_complex(&format!("{re},{im}")).unwrap();
        prop_assert_eq!(z, Complex64::new(re, im));
    }

    #[test]
    fn parser_never_panics(text in ".{0,40}") {
        let _ = parse_complex(&text);
    }
}
