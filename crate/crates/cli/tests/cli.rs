use serde_json::Value;
use structurable_cli::{run, Outcome};

fn call(args: &[&str], stdin: &str) -> Outcome {
    let argv: Vec<&str> = std::iter::once("structurable").chain(args.iter().copied()).collect();
    run(argv, &mut stdin.as_bytes())
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"))
}

#[test]
fn verify_registry() {
    let out = call(&["verify", "registry://A4"], "");
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["structurable"], true);
    assert_eq!(v["type"], serde_json::json!([2, 1]));
    assert_eq!(call(&["verify", "registry://Universal(1,2)"], "").code, 0);
}

#[test]
fn verify_rejects_non_structurable_input() {
    let mut a: Value = json(&call(&["verify", "registry://A5"], ""));
    assert_eq!(a["structurable"], true);
    // A5's table with the identity as involution
    let text = structurable::fixtures::raw("algebras/A5").unwrap();
    a = serde_json::from_str(text).unwrap();
    a["involution"] = serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]);
    let out = call(&["verify", "-"], &a.to_string());
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["structurable"], false);
}

#[test]
fn pipeline_through_stdin() {
    let built = call(&["ak-build", "registry://S2"], "");
    assert_eq!(built.code, 0);
    let out = call(&["analyze-lie", "-"], &built.stdout);
    let v = json(&out);
    assert_eq!((v["dim"].as_u64(), v["jacobi"].as_str(), v["radical_dim"].as_u64()), (Some(14), Some("pass"), Some(6)));
    assert_eq!(v["levi"], "sl3");
}

#[test]
fn ak_build_writes_file() {
    let path = std::env::temp_dir().join(format!("structurable-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = call(&["ak-build", "registry://A2", "-o", p], "");
    assert_eq!(out.code, 0);
    let out = call(&["analyze-lie", p], "");
    std::fs::remove_file(&path).ok();
    let v = json(&out);
    assert_eq!((v["radical_dim"].as_u64(), v["radical_nilindex"].as_u64()), (Some(8), Some(3)));
}

#[test]
fn classify_outcomes() {
    let out = call(&["classify", "--type", "21", "--params", r#"{"beta1": "1", "beta3": "4", "alpha3": "-4"}"#], "");
    assert_eq!(json(&out)["label"], "A4");
    let out = call(&["classify", "--type", "12", "--params", "-"], r#"{"alpha1": "4", "gamma": "2"}"#);
    assert_eq!(json(&out)["label"], "S2");
    let out = call(&["classify", "--type", "21", "--params", r#"{"alpha1": "1"}"#], "");
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("alpha1 = 0"), "{}", out.stderr);
    let out = call(&["classify", "--type", "21", "--params", r#"{"delta": "1"}"#], "");
    assert_eq!(out.code, 2);
}

#[test]
fn analysis_commands() {
    let v = json(&call(&["derivations", "registry://A1"], ""));
    assert_eq!(v["dim"], 4);
    let v = json(&call(&["derivations", "registry://A1", "--bar"], ""));
    assert_eq!(v["dim"], 2);
    let v = json(&call(&["identities", "registry://S2"], ""));
    assert_eq!(v["dim"], 3);
    let v = json(&call(&["subalgebras", "registry://A2", "--dim", "2", "--bound", "1"], ""));
    assert_eq!(v["count"], 2);
    let v = json(&call(&["allison-hein", "registry://A2"], ""));
    assert_eq!(v["table"][2][2], serde_json::json!(["0", "3", "0"]));
}

#[test]
fn automorphism_checks() {
    let out = call(&["automorphisms", "registry://A1"], "");
    assert_eq!(out.code, 0, "{}", out.stdout);
    let swap = r#"[["1","0","0"],["0","0","1"],["0","1","0"]]"#;
    let out = call(&["automorphisms", "registry://A1", "--matrix", swap], "");
    assert_eq!((out.code, json(&out)["automorphism"].as_bool()), (0, Some(true)));
    let out = call(&["automorphisms", "registry://A1", "--matrix", swap, "--bar"], "");
    assert_eq!(out.code, 1);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["frobnicate"], "").code, 2);
    assert_eq!(call(&["verify", "registry://A9"], "").code, 2);
    assert_eq!(call(&["verify", "/nonexistent/algebra.json"], "").code, 2);
    assert_eq!(call(&["verify", "-"], "{not json").code, 2);
    assert_eq!(call(&["--help"], "").code, 0);
}

#[test]
fn text_format() {
    let out = call(&["--format", "text", "verify", "registry://S1"], "");
    assert!(out.stdout.lines().any(|l| l == "structurable: true"), "{}", out.stdout);
    assert!(out.stdout.lines().any(|l| l == "type: [1, 2]"), "{}", out.stdout);
}

#[test]
fn repeated_runs_are_identical() {
    for args in [&["verify", "registry://A3", "--report"][..], &["ak-build", "registry://S1"][..]] {
        assert_eq!(call(args, ""), call(args, ""));
    }
}

#[test]
fn reproduction_reports_mismatches() {
    let out = call(&["--format", "text", "reproduce-paper", "--draws", "5", "--bound", "1"], "");
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("PASS [8] graded Lie algebra tables"), "{}", out.stdout);
    assert!(out.stdout.contains("FAIL [9]"), "{}", out.stdout);
    assert!(out.stdout.contains("    - F(A2) perfect = true, expected false"), "{}", out.stdout);
}
