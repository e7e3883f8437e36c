use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> (i32, Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pmat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn pmat");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (code, doc, stderr)
}

fn unit_ideal() -> Value {
    json!({"num_gens": ["1"]})
}

#[test]
fn smith_over_z_reports_invariant_chain() {
    let job = json!({
        "domain": {"type": "int"},
        "matrix": {
            "row_ideals": [unit_ideal(), unit_ideal()],
            "col_ideals": [unit_ideal(), unit_ideal()],
            "entries": [["4", "0"], ["0", "6"]],
        },
    });
    let (code, doc, stderr) = run(&["smith"], &job.to_string());
    assert_eq!(code, 0, "stderr: {}", stderr);
    let divisors = doc["divisors"].as_array().unwrap();
    assert_eq!(divisors[0]["num_gens"], json!(["2"]));
    assert_eq!(divisors[1]["num_gens"], json!(["12"]));
    assert_eq!(doc["verification"]["product_identity"], json!(true));
    assert_eq!(doc["verification"]["det_chains_equal"], json!(true));
}

#[test]
fn hermite_round_trips_over_quadratic_order() {
    let job = json!({
        "domain": {"type": "quadratic", "d": -5},
        "matrix": {
            "row_ideals": [unit_ideal()],
            "col_ideals": [unit_ideal(), unit_ideal()],
            "entries": [["2", ["1", "1"]]],
        },
    });
    let (code, doc, stderr) = run(&["hermite"], &job.to_string());
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(doc["rank"], json!(1));
    assert_eq!(doc["verification"]["transform_invertible"], json!(true));
    // Second column of the reduced form is zero.
    assert_eq!(doc["form"]["entries"][0][1]["num"], json!(["0", "0"]));
}

#[test]
fn solve_verdicts_drive_exit_codes() {
    let solvable = json!({
        "domain": {"type": "int"},
        "matrix": {
            "row_ideals": [unit_ideal()],
            "col_ideals": [unit_ideal()],
            "entries": [["3"]],
        },
        "rhs": ["6"],
    });
    let (code, doc, _) = run(&["solve"], &solvable.to_string());
    assert_eq!(code, 0);
    assert_eq!(doc["particular"][0]["num"], json!("2"));

    let inconsistent = json!({
        "domain": {"type": "int"},
        "matrix": {
            "row_ideals": [unit_ideal()],
            "col_ideals": [unit_ideal()],
            "entries": [["2"]],
        },
        "rhs": ["3"],
    });
    let (code, doc, _) = run(&["solve"], &inconsistent.to_string());
    assert_eq!(code, 2);
    assert_eq!(doc["solvable"], json!(false));
    assert_eq!(doc["failing_row"], json!(0));
}

#[test]
fn module_command_matches_known_chain() {
    let job = json!({
        "domain": {"type": "int"},
        "matrix": {
            "row_ideals": [unit_ideal(), unit_ideal()],
            "col_ideals": [unit_ideal(), unit_ideal()],
            "entries": [["2", "0"], ["0", "3"]],
        },
    });
    let (code, doc, stderr) = run(&["module"], &job.to_string());
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(doc["free_rank"], json!(0));
    let chain = doc["invariant_ideals"].as_array().unwrap();
    assert_eq!(chain.len(), 1);
    assert_eq!(chain[0]["num_gens"], json!(["6"]));
}

#[test]
fn ideal_inverse_cancels_to_one() {
    let job = json!({
        "domain": {"type": "quadratic", "d": -5},
        "op": "mul",
        "a": {"num_gens": ["2", ["1", "1"]]},
        "b": {"num_gens": ["2", ["1", "-1"]], "den": "2"},
    });
    let (code, doc, stderr) = run(&["ideal-op"], &job.to_string());
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(doc["result"]["num_gens"], json!([["1", "0"]]));
    assert_eq!(doc["result"]["den"], json!("1"));
}

#[test]
fn false_predicates_exit_two() {
    let job = json!({
        "domain": {"type": "quadratic", "d": -5},
        "op": "member",
        "a": {"num_gens": ["2", ["1", "1"]]},
        "x": "1",
    });
    let (code, doc, _) = run(&["ideal-op"], &job.to_string());
    assert_eq!(code, 2);
    assert_eq!(doc["result"], json!(false));
}

#[test]
fn invalid_inputs_are_rejected() {
    // d = 12 is not squarefree.
    let bad_domain = json!({
        "domain": {"type": "quadratic", "d": 12},
        "op": "inverse",
        "a": {"num_gens": ["2"]},
    });
    let (code, _, stderr) = run(&["ideal-op"], &bad_domain.to_string());
    assert_eq!(code, 1);
    assert!(stderr.contains("squarefree"), "stderr: {}", stderr);

    // Z[sqrt(d)] is not the maximal order when d = 1 mod 4.
    let bad_ring = json!({
        "domain": {"type": "quadratic", "d": -3, "ring": "sqrt"},
        "op": "inverse",
        "a": {"num_gens": ["2"]},
    });
    let (code, _, stderr) = run(&["ideal-op"], &bad_ring.to_string());
    assert_eq!(code, 1);
    assert!(stderr.contains("not maximal"), "stderr: {}", stderr);

    // Containment a_ij e_j in h_i fails: entry 1/2 against unit ideals.
    let bad_pm = json!({
        "domain": {"type": "int"},
        "matrix": {
            "row_ideals": [unit_ideal()],
            "col_ideals": [unit_ideal()],
            "entries": [[{"num": "1", "den": "2"}]],
        },
    });
    let (code, _, stderr) = run(&["hermite"], &bad_pm.to_string());
    assert_eq!(code, 1);
    assert!(stderr.contains("(0, 0)"), "stderr: {}", stderr);
}

#[test]
fn files_and_flags_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let domain_path = dir.path().join("domain.json");
    let job_path = dir.path().join("job.json");
    let out_path = dir.path().join("out.json");
    std::fs::write(&domain_path, r#"{"domain": {"type": "int"}}"#).unwrap();
    let job = json!({
        "command": "smith",
        "matrix": {
            "row_ideals": [unit_ideal(), unit_ideal()],
            "col_ideals": [unit_ideal(), unit_ideal()],
            "entries": [["2", "1"], ["1", "2"]],
        },
    });
    std::fs::write(&job_path, job.to_string()).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_pmat"))
        .args([
            "smith",
            "--domain-file",
            domain_path.to_str().unwrap(),
            "--job-file",
            job_path.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
            "--pretty",
            "--bezout-only",
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let divisors = doc["divisors"].as_array().unwrap();
    assert_eq!(divisors[0]["num_gens"], json!(["1"]));
    assert_eq!(divisors[1]["num_gens"], json!(["3"]));
    assert!(doc["pretty"].is_object());

    // The mismatched subcommand is refused.
    let status = Command::new(env!("CARGO_BIN_EXE_pmat"))
        .args([
            "hermite",
            "--domain-file",
            domain_path.to_str().unwrap(),
            "--job-file",
            job_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn dimension_guard_applies() {
    let n = 65;
    let ideals: Vec<Value> = (0..n).map(|_| unit_ideal()).collect();
    let entries: Vec<Vec<&str>> = (0..n).map(|_| vec!["0"; n]).collect();
    let job = json!({
        "domain": {"type": "int"},
        "matrix": {"row_ideals": ideals, "col_ideals": ideals, "entries": entries},
    });
    let (code, _, stderr) = run(&["module"], &job.to_string());
    assert_eq!(code, 1);
    assert!(stderr.contains("--max-dim"), "stderr: {}", stderr);
    let (code, doc, stderr) = run(&["module", "--max-dim", "80"], &job.to_string());
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(doc["free_rank"], json!(n));
}

#[test]
fn output_is_deterministic() {
    let job = json!({
        "domain": {"type": "quadratic", "d": -5},
        "matrix": {
            "row_ideals": [unit_ideal(), unit_ideal()],
            "col_ideals": [unit_ideal(), unit_ideal()],
            "entries": [["2", ["1", "1"]], [["1", "-1"], "3"]],
        },
    });
    let (c1, d1, _) = run(&["double-hermite"], &job.to_string());
    let (c2, d2, _) = run(&["double-hermite"], &job.to_string());
    assert_eq!(c1, 0);
    assert_eq!(c1, c2);
    assert_eq!(d1, d2);
}
