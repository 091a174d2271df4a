use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rcakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcakit"))
        .arg("--no-timing")
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rcakit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn identity_equals_itself() {
    let out = rcakit(&["ca", "equal", "id", "id", "--alphabet", "2x2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"]["kind"], "ExactEqual");
}

#[test]
fn unequal_rules_exit_with_one_and_a_witness() {
    let shift = scratch("shift.json");
    let out = rcakit(&["paut", "eval", "s1", "--alphabet", "2"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&shift, &out.stdout).unwrap();

    let out = rcakit(&["ca", "equal", shift.to_str().unwrap(), "id", "--alphabet", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"]["kind"], "ExactUnequal");
    assert!(r["verdict"]["witness"].is_string());

    let out = rcakit(&["ca", "apply", shift.to_str().unwrap(), "0|0110|0"]);
    assert_eq!(report(&out)["result"], "0|11|0");
}

#[test]
fn controlled_maps_built_on_the_command_line_are_reversible() {
    let path = scratch("ctrl.json");
    let out = rcakit(&["ctrl", "build", "--b", "2", "--c", "3", "--perm", "(0 3 6)", "--clopen", "0:10"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, &out.stdout).unwrap();
    let out = rcakit(&["ca", "check-rev", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["reversible"], true);
}

#[test]
fn odd_permutations_are_refused() {
    let out = rcakit(&["gates", "decompose", "--k", "3", "--n", "3", "--perm", "(0 1)"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "NotEven");
    assert_eq!(r["error"]["code"], 30);
}

#[test]
fn six_involutions_need_the_parity_condition() {
    let out = rcakit(&["wit", "six", "--b", "2", "--c", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["kind"], "ParityViolation");
}

#[test]
fn affine_round_trip_from_the_command_line() {
    let out = rcakit(&["lin", "check-roundtrip", "s1 * p[1,0,3,2]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"]["kind"], "ExactEqual");
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let a = rcakit(&["--seed", "3", "verify", "example41"]);
    let b = rcakit(&["--seed", "3", "verify", "example41"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 3);
}

#[test]
fn unknown_suites_and_bad_usage_exit_with_two() {
    assert_eq!(rcakit(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(rcakit(&["ca", "frobnicate"]).status.code(), Some(2));
}
