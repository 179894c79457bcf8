//! The `threepage` binary, end to end.

use std::process::{Command, Output};

use threepage::fixtures::{TREFOIL, W_G};

fn threepage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threepage"))
        .args(args)
        .env_remove("THREEPAGE_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn relations_count() {
    let o = threepage(&["relations", "--tier", "full"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 96);
    let o = threepage(&["relations", "--tier", "singular", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 84);
}

#[test]
fn equiv_and_chi() {
    assert_eq!(threepage(&["equiv", "b0 d0", ""]).status.code(), Some(0));
    let o = threepage(&["chi", W_G]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "2\n".into()));
}

#[test]
fn budget_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_threepage"))
        .args(["equiv", TREFOIL, "a1 c1"])
        .env("THREEPAGE_MAX_STATES", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("after"), "{}", stdout(&o));
}

#[test]
fn errors_go_to_stderr() {
    let o = threepage(&["decode", "a1 q1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(threepage(&["chi", "a1", "--frobnicate"]).status.code(), Some(1));
}

#[test]
fn encode_fixture() {
    let path = format!("{}/fixtures/trefoil.json", env!("CARGO_MANIFEST_DIR"));
    let o = threepage(&["encode", "--input", &path]);
    assert_eq!(stdout(&o).trim(), TREFOIL);
    let o = threepage(&["encode", "--input", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn admissible_and_invariants() {
    let o = threepage(&["admissible", W_G]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = threepage(&["admissible", "a0 a1 b2 a0 b1 c2 b0 d1 b2 c1 c1 a1 x1 c1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = threepage(&["invariants", W_G, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["singular_points"], 2);
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["resolutions"][0]["triviality"]["verdict"], "trivial");
    assert_eq!(v["resolutions"][1]["triviality"]["verdict"], "trivial");
}

#[test]
fn selftest_passes() {
    let o = threepage(&["selftest", "--contexts", "10"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}
