use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_schurpf"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let last = text.lines().last().unwrap_or("null");
    (out.status.code().unwrap_or(-1), serde_json::from_str(last).expect("json output"))
}

#[test]
fn expand_schur_example() {
    let (code, v) = run(&["expand-schur", "--lambda", "4,3,1", "--a", "(1+y*t)/(1-x*t)"]);
    assert_eq!(code, 0);
    let term = v["expansion"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["mu"] == serde_json::json!([2, 1]))
        .expect("S_(2,1) occurs");
    let coeff: schurpf::Poly = term["coeff"].as_str().unwrap().parse().unwrap();
    assert_eq!(coeff, "x^2*y*(x+y)^2".parse().unwrap());
}

#[test]
fn verify_small_theorem1() {
    let (code, v) = run(&["verify", "theorem1", "--n", "2", "--max-entry", "3", "--factors", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(v["instances"].as_u64().unwrap() > 0);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn large_instance_counts_agree() {
    let (code, t) = run(&["tableaux", "--figure1", "--list", "1"]);
    assert_eq!(code, 0);
    let (_, p) = run(&["paths", "--figure1"]);
    assert_eq!(t["count"], p["families"]);
    let third: schurpf::Poly = t["displayed"]["row_weights"][2].as_str().unwrap().parse().unwrap();
    assert_eq!(third, "y1*y3*(x1+y5)*(x1+y6)".parse().unwrap());
}

#[test]
fn small_instance_sums_agree() {
    let args = ["--p", "0,1,2", "--q", "3,2,0", "--mu", "2,1,0"];
    let (_, t) = run(&[&["tableaux"], &args[..]].concat());
    let (_, p) = run(&[&["paths"], &args[..]].concat());
    assert_eq!(t["weight_sum"], p["weight_sum"]);
    assert_eq!(t["count"], p["families"]);
    assert_eq!(t["count"], "6");
}

#[test]
fn operators_and_schubert_commands() {
    let (code, d) = run(&["operator", "--op", "c-partial0", "--lambda", "3,1"]);
    assert_eq!(code, 0);
    let (_, c) = run(&["operator", "--op", "c-partial0", "--lambda", "3,1", "--method", "closed-form"]);
    assert_eq!(d["expansion"], c["expansion"]);
    let (code, a) = run(&["vexillary", "--p", "-1,0", "--q", "2,1"]);
    assert_eq!(code, 0);
    let (_, b) = run(&["vexillary", "--p", "-1,0", "--q", "2,1", "--method", "tableaux"]);
    assert_eq!(a["expansion"], b["expansion"]);
    let (code, w) = run(&["w321", "--p", "1,-1", "--q", "2,0"]);
    assert_eq!(code, 0, "{w}");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["expand-pfaffian", "--lambda", "3,1", "--a", "(1+x*t)"]);
    let b = run(&["expand-pfaffian", "--lambda", "3,1", "--a", "(1+x*t)"]);
    assert_eq!(a, b);
}

#[test]
fn invalid_input_exits_one_with_json() {
    for args in [
        &["expand-schur", "--lambda", "4,x"][..],
        &["expand-schur", "--lambda", "2,1", "--a", "(1+y*t"][..],
        &["vexillary", "--p", "0,0", "--q", "1"][..],
        &["frobnicate"][..],
    ] {
        let (code, v) = run(args);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(v["error"], "invalid input");
    }
}
