//! End-to-end checks of the binary: the documented invocations, exit codes,
//! and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cme"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_cap(args: &[&str], cap: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cme"))
        .env("EULERIAN_CAP", cap)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn eulerian_both_methods() {
    let out = run(&["eulerian", "--m", "3,3", "--r", "1,1", "--method", "both", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["methods_agree"], serde_json::json!(true));
    assert_eq!(
        doc["transform"]["poly"]["coeffs"],
        serde_json::json!(["1", "9", "9", "1"])
    );
    assert_eq!(doc["degree"], serde_json::json!(3));
    assert_eq!(doc["codegree"], serde_json::json!(4));
}

#[test]
fn decompose_example() {
    let out = run(&["decompose", "--poly", "1,5,17,15,2", "--n", "4", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        doc["a"]["coeffs"],
        serde_json::json!(["1", "4", "6", "4", "1"])
    );
    assert_eq!(
        doc["b"]["coeffs"],
        serde_json::json!(["1", "11", "11", "1"])
    );
}

#[test]
fn verify_equidistribution() {
    let out = run(&["verify", "--kind", "equidistribution", "--m", "2,2", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], serde_json::json!("match"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--kind", "macmahon_mv", "--m", "2,1", "--r", "2,3", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    // pretty mode is deterministic too and carries the same data
    let pretty_args = ["verify", "--kind", "macmahon_mv", "--m", "2,1", "--r", "2,3"];
    let p1 = run(&pretty_args);
    let p2 = run(&pretty_args);
    assert_eq!(p1.stdout, p2.stdout);
    assert!(String::from_utf8_lossy(&p1.stdout).contains("status: \"match\""));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--kind", "bogus", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // flag statistics demand a constant color vector
    let out = run(&["verify", "--kind", "flag", "--m", "1,1", "--r", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_3() {
    let out = run_with_cap(&["eulerian", "--m", "3,3", "--r", "1,1"], "5");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn seulerian_search_and_hat() {
    let out = run(&["seulerian", "--search-target", "1,4,4", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let matches = doc["matches"].as_array().unwrap();
    assert!(matches.contains(&serde_json::json!([1, 3, 1, 3])));

    let out = run(&["seulerian", "--hat", "4,1", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["hat"], serde_json::json!([1, 1, 3, 2]));
}

#[test]
fn certify_and_lattice() {
    let out = run(&["certify", "--poly", "1,4,4", "--check", "real-rooted", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["certificate"]["real_rooted"], serde_json::json!(true));
    assert_eq!(
        doc["certificate"]["roots"][0]["multiplicity"],
        serde_json::json!(2)
    );

    let out = run(&["lattice", "--m", "1,1", "--r", "1,1", "--t", "2", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["count"], serde_json::json!("9"));
}

#[test]
fn trees_partition() {
    let out = run(&["trees", "--partition", "2,2", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["g_size"], serde_json::json!(1));
    assert_eq!(doc["h_size"], serde_json::json!(2));
    assert_eq!(doc["matches_decomposition"], serde_json::json!(true));
}
