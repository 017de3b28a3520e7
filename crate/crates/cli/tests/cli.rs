use std::path::PathBuf;
use std::process::Command;

use mealy_cli::{run, Outcome, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
use mealy_groups::builtin::V26_SOURCE;
use mealy_groups::format::parse_machine;

fn mealy(args: &[&str]) -> Outcome {
    run(std::iter::once("mealy").chain(args.iter().copied()))
}

fn machines_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/machines")
}

/// Writes `text` to a fresh file under the system temp directory.
fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mealy-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn act_prints_image_and_final_state() {
    let out = mealy(&["act", "V26", "--word", "p q", "--input", "0010"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "1110\nfinal (p,p)\n");
}

#[test]
fn recognize_certifies_v26() {
    let out = mealy(&["recognize", "V26", "p", "q", "--depth", "16"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(
        out.stdout.starts_with("CertifiedDihedral\np -> (0, 1) = i -> -i\nq -> (-1, 1) = i -> -i-1\nmachine V26\n"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("prefix 16 "), "{}", out.stdout);
    let swapped = mealy(&["recognize", "V26", "q", "p"]);
    assert_eq!(swapped.code, EXIT_OK);
}

#[test]
fn recognize_refutes_equal_generators() {
    let out = mealy(&["recognize", "V26", "p", "p"]);
    assert_eq!(out.code, EXIT_REFUTED);
}

#[test]
fn recognize_refutes_non_involution() {
    let adder = machines_dir().join("adder.mealy");
    let out = mealy(&["recognize", adder.to_str().unwrap(), "a", "a"]);
    assert_eq!(out.code, EXIT_REFUTED);
}

#[test]
fn certify_reports_inconclusive_for_finite_orbit() {
    let out = mealy(&["certify", "V26", "--word", "p", "--depth", "4"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE, "{}", out.stdout);
    let out = mealy(&["certify", "V26", "--word", "p q", "--depth", "4"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("machine V26\ngenerators p q\ndepth 4\nprefix 0 0000000000\n"), "{}", out.stdout);
}

#[test]
fn order_of_involution() {
    let out = mealy(&["order", "V26", "--word", "p", "--max", "8"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "2\n"));
    let out = mealy(&["order", "V26", "--word", "p q", "--max", "64"]);
    assert_eq!(out.stdout, "exceeds bound 64\n");
}

#[test]
fn equal_enumerate_relations() {
    let out = mealy(&["equal", "V26", "--word", "p q p", "--word", "q p q p q"]);
    assert_eq!(out.stdout, "false\n");
    let out = mealy(&["equal", "V26", "--word", "p p q", "--word", "q"]);
    assert_eq!(out.stdout, "true\n");
    let out = mealy(&["enumerate", "V26", "--max", "3"]);
    assert!(out
        .stdout
        .starts_with("length 0 elements 1\nlength 1 elements 3\nlength 2 elements 5\nlength 3 elements 7\n"));
    let out = mealy(&["relations", "V26", "--max", "4"]);
    assert_eq!(out.stdout, "p p\nq q\n");
}

#[test]
fn coords_of_generators() {
    let out = mealy(&["coords", "V26", "p", "q", "--word", "p q"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.starts_with("(1, 0)\n"), "{}", out.stdout);
    let out = mealy(&["coords", "V26", "p", "p", "--word", "p"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn minimize_and_compose_formats() {
    let out = mealy(&["minimize", "V26", "--word", "p q"]);
    let m = parse_machine(&out.stdout).unwrap();
    assert_eq!(m.num_states(), 3);
    let out = mealy(&["compose", "V26", "--word", "p q"]);
    assert_eq!(parse_machine(&out.stdout).unwrap().num_states(), 4);
    let out = mealy(&["minimize", "V26", "--word", "p q", "--format", "dot"]);
    assert!(out.stdout.starts_with("digraph"), "{}", out.stdout);
    let out = mealy(&["invert", "V26"]);
    assert_eq!(parse_machine(&out.stdout).unwrap().num_states(), 2);
    let out = mealy(&["dot", "V26"]);
    assert!(out.stdout.contains("\"p\" -> \"q\""), "{}", out.stdout);
}

#[test]
fn validate_fixture_and_builtin_agree() {
    let path = machines_dir().join("v26.mealy");
    let from_file = mealy(&["validate", path.to_str().unwrap()]);
    let builtin = mealy(&["validate", "V26"]);
    assert_eq!(from_file, builtin);
    assert_eq!(builtin.stdout, "ok\nstates 2\nletters 2\ninvertible true\n");
    assert_eq!(std::fs::read_to_string(path).unwrap(), V26_SOURCE);
}

#[test]
fn parse_errors_exit_with_usage() {
    let empty = temp_file("empty.mealy", "");
    let out = mealy(&["validate", empty.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("no machine declaration"), "{}", out.stderr);

    let incomplete = temp_file("incomplete.mealy", "machine m\nalphabet 0 1\nstate s: 0 -> s / 1\n");
    let out = mealy(&["validate", incomplete.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("incomplete state"), "{}", out.stderr);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    let duplicate = temp_file(
        "duplicate.mealy",
        "machine m\nalphabet 0 1\nstate s: 0 -> s / 1 ; 1 -> s / 0\nstate s: 0 -> s / 0 ; 1 -> s / 1\n",
    );
    let out = mealy(&["validate", duplicate.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
}

#[test]
fn usage_errors() {
    assert_eq!(mealy(&[]).code, EXIT_USAGE);
    assert_eq!(mealy(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(mealy(&["act", "V26", "--word", "z", "--input", "0"]).code, EXIT_USAGE);
    assert_eq!(mealy(&["act", "V26", "--word", "p", "--input", "2"]).code, EXIT_USAGE);
    assert_eq!(mealy(&["--jobs", "0", "order", "V26", "--word", "p"]).code, EXIT_USAGE);
    assert_eq!(mealy(&["validate", "/nonexistent/machine.mealy"]).code, EXIT_USAGE);
    assert_eq!(mealy(&["--help"]).code, EXIT_OK);
}

#[test]
fn output_is_schedule_independent() {
    let args = ["enumerate", "V26", "--max", "6"];
    let base = mealy(&args);
    for jobs in ["1", "2", "4"] {
        let mut with_jobs = vec!["--jobs", jobs];
        with_jobs.extend(args);
        assert_eq!(mealy(&with_jobs), base);
    }
    let rec = ["recognize", "V26", "p", "q"];
    assert_eq!(mealy(&rec), mealy(&["--jobs", "3", "recognize", "V26", "p", "q"]));
}

#[test]
fn binary_matches_library_byte_for_byte() {
    let args = ["recognize", "V26", "p", "q", "--depth", "8"];
    let first = Command::new(env!("CARGO_BIN_EXE_mealy")).args(args).output().unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_mealy")).args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(EXIT_OK));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(String::from_utf8(first.stdout).unwrap(), mealy(&args).stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_mealy")).args(["recognize", "V26", "p", "p"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_REFUTED));
}
