//! End-to-end tests of the command-line binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn network(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../networks")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crnmss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_m2_json() {
    let out = run(&["analyze", &network("m2.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["verdict"]["outcome"], "MSS");
    assert_eq!(v["verdict"]["provenance"], "OneReactionCriterion");
    assert_eq!(v["verdict"]["atom"]["form"], "2X -> 3X");
    // the echo reparses to the same network
    let echo = v["network_echo"].as_str().unwrap();
    let doc = crnmss::parser::parse_network(echo).unwrap();
    let orig =
        crnmss::parser::parse_network(&std::fs::read_to_string(network("m2.crn")).unwrap())
            .unwrap();
    assert!(crnmss::parser::documents_equivalent(&doc, &orig));
}

#[test]
fn analyze_n2_inconclusive() {
    let out = run(&["analyze", &network("n2.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["outcome"], "Inconclusive");
    assert!(v["verdict"]["atom"].is_null());
}

#[test]
fn analyze_n3_with_user_atoms() {
    let out = run(&[
        "analyze",
        &network("n3.crn"),
        "--atoms-dir",
        &network("atoms"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["outcome"], "MSS");
    assert_eq!(v["verdict"]["provenance"], "UserAtom");
    let kept: Vec<&str> = v["verdict"]["embedding"]["kept_species"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(kept, ["A", "B", "E"]);
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "analyze",
        &network("n1.crn"),
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn defone_m1_and_m2() {
    let out = run(&["defone", &network("m1.crn"), "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: NoMSS"));
    assert!(text.contains("feasible = false"));

    let out = run(&["defone", &network("m2.crn")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: MSS"));
    assert!(text.contains("mu: ("));
}

#[test]
fn defone_hypotheses_failure() {
    let out = run(&["defone", &network("n1.crn")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("hypotheses"));
}

#[test]
fn witness_m2_and_m1() {
    let out = run(&["witness", &network("m2.crn")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("atom: 2X -> 3X"));
    assert!(text.contains("k* = 1/4"));
    assert!(text.contains("k = 1/8"));
    assert!(text.contains("nondegenerate states: 2"));

    let out = run(&["witness", &network("m1.crn")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("NoMSS"));
}

#[test]
fn witness_seed_is_deterministic() {
    let a = run(&["witness", &network("m2.crn"), "--seed", "42", "--json"]);
    let b = run(&["witness", &network("m2.crn"), "--seed", "42", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["steady_states"]["nondegenerate_count"], 2);
}

#[test]
fn odes_output() {
    let out = run(&["odes", &network("m2.crn")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dA/dt = A_in - A_out*A + k1*A^2*B - k2*A^3"));
    assert!(text.contains("dB/dt = B_in - B_out*B - k1*A^2*B + k2*A^3"));
}

#[test]
fn atoms_listing() {
    let out = run(&["atoms", &network("n1.crn")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("atom: 2X -> 3X on species E"));

    let out = run(&["atoms", &network("n2.crn")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no one-reaction atoms found"));

    let out = run(&["atoms", &network("atoms/ab.crn")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not fully open"));
}

#[test]
fn parse_error_exit_code() {
    let dir = std::env::temp_dir().join("crnmss-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.crn");
    std::fs::write(&bad, "A -> \n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"));
}

#[test]
fn budget_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_crnmss"))
        .args([
            "analyze",
            &network("n3.crn"),
            "--atoms-dir",
            &network("atoms"),
            "--json",
        ])
        .env("CRNMSS_BUDGET", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["outcome"], "Inconclusive");
}
