use std::process::Command;

use dynres_cli::{run, EXIT_BUDGET, EXIT_OK, EXIT_REJECTED, EXIT_USAGE};
use serde_json::Value;

fn dynres(args: &[&str]) -> dynres_cli::Outcome {
    run(std::iter::once("dynres").chain(args.iter().copied()), None)
}

#[test]
fn affine_format_is_rejected_with_its_type() {
    let out = dynres(&["format", "1", "6", "8", "3"]);
    assert_eq!(out.code, EXIT_REJECTED);
    assert!(out.stdout.contains("affine type"), "{}", out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dynres");
    let status = |args: &[&str]| Command::new(bin).args(args).env_remove(dynres_cli::PROFILE_VAR).output().unwrap();
    let ok = status(&["format", "1,5,6,2"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("E6"));
    assert_eq!(status(&["format", "1", "6", "8", "3"]).status.code(), Some(EXIT_REJECTED));
    assert_eq!(status(&["no-such-command"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(status(&["--help"]).status.code(), Some(EXIT_OK));
    assert_eq!(status(&["cosets", "--format", "1,5,6"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn table_text_has_known_entries() {
    let out = dynres(&["table"]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<Vec<&str>> = out.stdout.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[2], ["d=2", "3", "6", "18", "109", "--"]);
    assert_eq!(rows[4], ["d=4", "4", "63", "--", "--", "--"]);
}

#[test]
fn table_json_matches_text() {
    let out = dynres(&["--json", "table", "--max-d", "2", "--max-t", "2"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rows"], serde_json::json!([[2, 2], [2, 3], [3, 6]]));
}

#[test]
fn decompose_json() {
    let out = dynres(&["decompose", "--format", "1,5,6,2", "--json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 78);
    let comps = v["components"].as_array().unwrap();
    let dims: u64 = comps.iter().map(|c| c["dimension"].as_u64().unwrap() * c["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(dims, 78);
    assert_eq!(comps[0]["label"], "F1");
}

#[test]
fn decompose_rejects_non_dynkin() {
    let out = dynres(&["decompose", "--format", "1,6,8,3"]);
    assert_eq!(out.code, EXIT_REJECTED);
}

#[test]
fn betti_check_reports_obstructions() {
    let out = dynres(&["--json", "betti", "check", r#"{"f":[1,4,4,1],"s1":[2,2,2,2],"s2":[3,3,3,3],"s3":[4]}"#]);
    assert_eq!(out.code, EXIT_OK);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["degree_zero_generator"], false);
    let bad = dynres(&["betti", "check", r#"{"f":[1,3,3,1],"s1":[1],"s2":[],"s3":[]}"#]);
    assert_eq!(bad.code, EXIT_REJECTED);
    assert_eq!(dynres(&["betti", "check", "{not json"]).code, EXIT_USAGE);
}

#[test]
fn resolution_output_feeds_res_commands() {
    let res = dynres(&["--json", "schubert", "resolution", "--format", "1,4,4,1", "--sigma", "s:z1,u,x1"]);
    assert_eq!(res.code, EXIT_OK, "{}", res.stderr);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert!(v["chart"]["variables"].is_array());
    let path = std::env::temp_dir().join(format!("dynres-cli-{}.json", std::process::id()));
    std::fs::write(&path, &res.stdout).unwrap();
    let p = path.to_str().unwrap();

    let validate = dynres(&["--json", "res", "validate", p]);
    assert_eq!(validate.code, EXIT_OK, "{}", validate.stderr);
    let report: Value = serde_json::from_str(&validate.stdout).unwrap();
    assert_eq!(report["acyclic"], "yes");

    let complex = serde_json::to_string(&v["complex"]).unwrap();
    let again = dynres(&["--json", "res", "multipliers", &complex]);
    assert_eq!(again.code, EXIT_OK, "{}", again.stderr);
    let m: Value = serde_json::from_str(&again.stdout).unwrap();
    assert!(m["a1"].is_object() || m["a1"].is_array());
    std::fs::remove_file(&path).ok();
}

#[test]
fn outputs_are_deterministic() {
    let args = ["--json", "schubert", "ideal", "--format", "1,5,5,1", "--sigma", "w0"];
    assert_eq!(dynres(&args), dynres(&args));
}

#[test]
fn budget_profile_and_overrides() {
    let res = dynres(&["--json", "schubert", "resolution", "--format", "1,5,6,2", "--sigma", "w0"]);
    let complex = serde_json::to_string(&serde_json::from_str::<Value>(&res.stdout).unwrap()["complex"]).unwrap();
    let starved = dynres(&["--max-unknowns", "1", "res", "multipliers", &complex]);
    assert_eq!(starved.code, EXIT_BUDGET, "{}", starved.stderr);
    let env = run(["dynres", "res", "multipliers", complex.as_str()], Some("small"));
    assert_eq!(env.code, EXIT_BUDGET, "{}", env.stderr);
    assert_eq!(dynres(&["--profile", "huge", "table"]).code, EXIT_USAGE);
}

#[test]
fn bad_sigma_is_a_usage_error() {
    let out = dynres(&["schubert", "ideal", "--format", "1,4,4,1", "--sigma", "s:q9"]);
    assert_eq!(out.code, EXIT_USAGE, "{}", out.stderr);
}
