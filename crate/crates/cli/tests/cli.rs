//! End-to-end checks of the binary: output shapes, JSON round-trips, and the
//! exit-code contract (0 pass, 1 violation, 2 usage/resource error).

use std::process::{Command, Output};

fn csf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csf"))
        .args(args)
        .env_remove("CSF_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn expand_text_matches_known_values() {
    let out = csf(&["expand", "--dyck", "2,3", "--basis", "e"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "e(3): 1+q+q^2\ne(2,1): q\n");

    let out = csf(&["expand", "--dyck", "1,2", "--basis", "e"]);
    assert_eq!(stdout(&out), "e(1,1,1): 1\n");

    let out = csf(&["expand", "--dyck", "2,3", "--basis", "s"]);
    assert_eq!(stdout(&out), "s(2,1): q\ns(1,1,1): 1+2q+q^2\n");
}

#[test]
fn expand_json_round_trips() {
    let out = csf(&["expand", "--dyck", "2,3", "--basis", "e", "--format", "json"]);
    assert!(out.status.success());
    let parsed: csf_core::SymExpansion = serde_json::from_str(&stdout(&out)).unwrap();
    let direct = csf_core::e_expansion(
        &csf_core::UnitIntervalPoset::from_dyck(&"2,3".parse().unwrap()).unwrap(),
    );
    assert_eq!(parsed, direct);
}

#[test]
fn kostka_entries() {
    let out = csf(&["kostka", "--type", "5,4,3,1", "--shape", "4,3,3,3", "--inverse"]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = csf(&["kostka", "--type", "2,1", "--shape", "1,1,1"]);
    assert_eq!(stdout(&out).trim(), "2");

    // size mismatch is a usage error
    let out = csf(&["kostka", "--type", "2,1", "--shape", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounce_dump() {
    let out = csf(&["bounce", "--dyck", "4,6,6,6,6,7,8,8"]);
    let text = stdout(&out);
    assert!(text.contains("m=(4,6,8)"));
    assert!(text.contains("|m|=3"));
    assert!(text.contains("(a,b,c)=(2,2,4)"));
    assert!(text.contains("tau=(6,5,1,1)"));
}

#[test]
fn malformed_path_exits_2() {
    let out = csf(&["expand", "--dyck", "3,2", "--basis", "e"]);
    assert_eq!(out.status.code(), Some(2));
    let out = csf(&["bounce", "--dyck", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_bounce_two_paths_are_e_positive() {
    let out = csf(&["scan", "--n", "6", "--bounce", "2", "--check", "e-positive", "--jobs", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("0 violations"));
}

#[test]
fn scan_class_restriction() {
    let out = csf(&["scan", "--n", "7", "--class", "thm41", "--check", "e-positive"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 violations"));
}

#[test]
fn scan_coefficient_checks() {
    let out = csf(&["scan", "--n", "7", "--bounce", "3", "--check", "coeff-l0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 violations"));

    let out = csf(&["scan", "--n", "7", "--bounce", "3", "--check", "coeff-l1"]);
    assert!(out.status.success());

    // incompatible bounce filter is a usage error
    let out = csf(&["scan", "--n", "6", "--bounce", "2", "--check", "coeff-l0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_board_passes_and_serializes() {
    let out = csf(&["verify", "--map", "all", "--n", "5", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Vec<csf_core::InjectionReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.pass()));

    let out = csf(&["verify", "--map", "alpha", "--n", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 failing"));
}

#[test]
fn cross_validate_exit_codes() {
    let out = csf(&["cross-validate", "--n", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 violations"));
}

#[test]
fn resource_limit_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_csf"))
        .args(["cross-validate", "--n", "6"])
        .env("CSF_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
