//! Behavior of the `equid` binary: exit codes, determinism, file IO.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equid"))
}

fn stdout_of(args: &[&str]) -> (String, bool) {
    let out = bin().args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.success())
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_1() {
    // zero denominator in the angle vector
    let out = bin().args(["delta", "--omega", "1/0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.starts_with("error:"), "structured message, got {msg}");
}

#[test]
fn delta_and_orbit_output() {
    let (text, ok) = stdout_of(&["delta", "--omega", "1/5,2/5"]);
    assert!(ok);
    assert!(text.contains("delta: 2"));
    let (text, ok) = stdout_of(&["orbit", "--omega", "1/5,2/5", "--json"]);
    assert!(ok);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["size"], 4);
    assert_eq!(doc["orbit"][2][0], "3/5");
}

#[test]
fn discrepancy_equispaced() {
    let (text, ok) = stdout_of(&["discrepancy", "--points", "equispaced:8", "--d", "1"]);
    assert!(ok);
    assert!(text.contains("8,,0.125"), "got:\n{text}");
    assert!(text.contains("# D exact: 1/8"));
}

#[test]
fn polytope_and_koksma_files() {
    let dir = std::env::temp_dir().join("equid_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let poly_path = dir.join("square.json");
    std::fs::write(
        &poly_path,
        r#"{"vertices": [["0","0"],["1","0"],["1","1"],["0","1"]]}"#,
    )
    .unwrap();
    let (text, ok) = stdout_of(&[
        "polytope",
        "--file",
        poly_path.to_str().unwrap(),
        "--epsilon",
        "1/2",
    ]);
    assert!(ok);
    assert!(text.contains("volume: 1"));
    assert!(text.contains("inradius: 1/2"));
    assert!(text.contains("exact 3/4"));
    let (text, ok) = stdout_of(&[
        "koksma-bound",
        "--polytope",
        poly_path.to_str().unwrap(),
        "--discrepancy",
        "0.0001",
        "--sup-bound",
        "1.0",
        "--rho",
        "0.0",
    ]);
    assert!(ok);
    assert!(text.contains("total:"));
}

#[test]
fn equidist_reruns_are_byte_identical() {
    let dir = std::env::temp_dir().join("equid_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let poly = dir.join("t1.json");
    std::fs::write(
        &poly,
        r#"{"d":2,"terms":[{"exp":[1,0],"re":"1","im":"0"},{"exp":[0,0],"re":"-1","im":"0"}]}"#,
    )
    .unwrap();
    let delta = dir.join("sq.json");
    std::fs::write(
        &delta,
        r#"{"vertices": [["0","0"],["1","0"],["1","1"],["0","1"]]}"#,
    )
    .unwrap();
    let args = [
        "equidist",
        "--poly",
        poly.to_str().unwrap(),
        "--polytope",
        delta.to_str().unwrap(),
        "--omega",
        "1/5,2/5",
        "--samples",
        "4096",
        "--seed",
        "3",
    ];
    let (a, ok1) = stdout_of(&args);
    let (b, ok2) = stdout_of(&args);
    assert!(ok1 && ok2);
    assert_eq!(a, b);
    assert!(a.contains("# seed: 3"));
}

#[test]
fn constants_trace_round_trip() {
    let dir = std::env::temp_dir().join("equid_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let trace = dir.join("trace.json");
    let (text, ok) = stdout_of(&[
        "constants",
        "--d",
        "3",
        "--k",
        "2",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(ok, "constants failed: {text}");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(doc["d"], 3);
    // d = 3 runs exactly one inner level plus the final one
    assert_eq!(doc["levels"].as_array().unwrap().len(), 2);
    // every rational travels as a p/q string
    assert!(doc["epsilon"].as_str().unwrap().contains('/'));
}

#[test]
fn heights_report_and_sweep() {
    let (text, ok) = stdout_of(&["heights", "--omega", "1/7,3/7"]);
    assert!(ok);
    assert!(text.contains("h_arch: 0.667755433618467"), "got {text}");
    let dir = std::env::temp_dir().join("equid_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("sweep.csv");
    let (_, ok) = stdout_of(&[
        "heights",
        "sweep",
        "--primes",
        "5..60",
        "--ratio",
        "0.618",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(ok);
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("# equid"));
    assert!(body.contains("p,mult,ord,delta,n,h_arch,h_nonarch,h_total,gap,kappa_rate"));
    assert!(body.lines().filter(|l| !l.starts_with('#')).count() > 10);
}
