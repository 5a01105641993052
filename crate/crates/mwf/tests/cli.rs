use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> mwf::Outcome {
    mwf::run(std::iter::once("mwf").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

#[test]
fn whittaker_reports_parameters_and_equality() {
    let (code, v) = json(&["compute", "whittaker", "--cartan", "A2", "--n", "2", "--lambda", "1,1", "--q", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["equal"], true);
    assert_eq!(v["result"]["dominant"], true);
    let p = &v["params"];
    assert_eq!(p["cartan"], "A2");
    assert_eq!(p["n"], 2);
    assert_eq!(p["kappa"], 1);
    assert_eq!(p["lambda"], "1,1");
    assert_eq!(p["q"], 5.0);
    assert!(p.get("seed").is_some());
    assert!(!v["result"]["numeric"].as_array().unwrap().is_empty());
}

#[test]
fn nondominant_whittaker_is_zero() {
    let (code, v) = json(&["compute", "whittaker", "--cartan", "A2", "--lambda", "-1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["nondominant"], true);
    assert_eq!(v["result"]["value"].as_array().unwrap().len(), 0);
}

#[test]
fn per_w_lists_every_weyl_element() {
    let (_, v) = json(&["compute", "whittaker", "--cartan", "B2", "--lambda", "1,1", "--per-w"]);
    assert_eq!(v["result"]["per_w"].as_array().unwrap().len(), 8);
}

#[test]
fn spherical_rejects_nondominant() {
    let out = run(&["compute", "spherical", "--cartan", "A2", "--lambda", "1,0"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("error"));
}

#[test]
fn spherical_zero_weight() {
    let (code, v) = json(&["compute", "spherical", "--cartan", "G2", "--n", "2", "--lambda", "0,0", "--q", "7"]);
    assert_eq!(code, 0);
    let poly = v["result"]["polynomial"].as_array().unwrap();
    assert_eq!(poly.len(), 1);
    assert_eq!(poly[0]["coeff"], "1");
}

#[test]
fn verify_targets_pass() {
    for target in [
        "cg-braid",
        "dl-braid",
        "symmetrizer",
        "cs",
        "fg",
        "macdonald",
        "hecke",
        "spherical",
        "intertwiner",
        "tau",
        "scattering",
        "involution",
    ] {
        let (code, v) = json(&["verify", target, "--cartan", "A2", "--n", "2", "--families", "10"]);
        assert_eq!(code, 0, "{target}: {v}");
        assert_eq!(v["ok"], true, "{target}");
        assert!(v["identity"].is_string(), "{target}");
        assert_eq!(v["params"]["n"], 2);
    }
}

#[test]
fn seed_is_echoed_and_deterministic() {
    let args = ["verify", "scattering", "--cartan", "A1", "--n", "3", "--seed", "42", "--families", "5"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(a["params"]["seed"], 42);
    assert_eq!(a, b);
}

#[test]
fn braid_needs_rank_two() {
    assert_eq!(run(&["verify", "cg-braid", "--cartan", "A3"]).code, 2);
}

#[test]
fn oracle_commands() {
    let (code, v) = json(&["oracle", "gauss", "--p", "13", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"].as_array().unwrap().len(), 3);
    let (code, v) = json(&["oracle", "rank1", "--p", "7", "--n", "3", "--pairing", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["orientation"]["s"], 1);
    assert_eq!(v["orientation"]["t"], -1);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["--bogus"]).code, 2);
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["verify", "nothing", "--cartan", "A2"]).code, 2);
    assert_eq!(run(&["verify", "cs", "--cartan", "Q7"]).code, 2);
    assert_eq!(run(&["compute", "whittaker", "--cartan", "A2", "--lambda", "1"]).code, 2);
    assert_eq!(run(&["compute", "whittaker", "--cartan", "A2", "--lambda", "x,y"]).code, 2);
    assert_eq!(run(&["oracle", "gauss", "--p", "7", "--n", "2"]).code, 2);
    assert_eq!(run(&["oracle", "gauss", "--p", "15", "--n", "1"]).code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let h = run(&["--help"]);
    assert_eq!(h.code, 0);
    assert!(h.stdout.contains("verify"));
    assert_eq!(run(&["verify", "--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn text_output() {
    let out = run(&["verify", "macdonald", "--cartan", "A2", "--output", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("identity: zero-case"));
    assert!(out.stdout.contains("ok: true"));
}

fn job_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn batch_runs_jobs_in_order() {
    let f = job_file(
        r#"{"jobs": [
            {"command": "verify macdonald", "params": {"cartan": "B2", "n": 2}},
            {"command": "compute whittaker", "params": {"cartan": "A2", "lambda": [1, 1], "per_w": true}},
            {"command": "oracle gauss", "params": {"p": 7, "n": 3}}
        ]}"#,
    );
    let (code, v) = json(&["--jobs", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["jobs"], 3);
    assert_eq!(v["failures"], 0);
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["command"], "verify macdonald");
    assert_eq!(r[1]["output"]["result"]["per_w"].as_array().unwrap().len(), 6);
    assert_eq!(r[2]["output"]["p"], 7);
}

#[test]
fn batch_counts_failures() {
    let f = job_file(r#"{"jobs": [{"command": "oracle gauss", "params": {"p": 7, "n": 2}}]}"#);
    let (code, v) = json(&["--jobs", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["failures"], 1);
    assert_eq!(v["results"][0]["exit_code"], 2);
}

#[test]
fn batch_empty_omits_results() {
    let f = job_file(r#"{"jobs": []}"#);
    let (code, v) = json(&["--jobs", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["jobs"], 0);
    assert!(v.get("results").is_none());
}

#[test]
fn batch_malformed_config_exits_two() {
    for text in [
        "not json",
        r#"{"tasks": []}"#,
        r#"{"jobs": [{"command": "verify cs", "params": {"cartan": {"x": 1}}}]}"#,
    ] {
        let f = job_file(text);
        assert_eq!(run(&["--jobs", f.path().to_str().unwrap()]).code, 2, "{text}");
    }
    assert_eq!(run(&["--jobs", "/nonexistent/jobs.json"]).code, 2);
}

#[test]
fn shipped_config_passes() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/acceptance.json");
    let (code, v) = json(&["--jobs", path]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["failures"], 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mwf");
    let ok = Command::new(bin)
        .args(["verify", "fg", "--cartan", "A2", "--n", "2"])
        .env("MWF_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["ok"], true);
    let bad = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
