use std::path::Path;
use std::process::{Command, Output};

use dworkbench::emit;
use dworkbench_core::report::{
    CartanRecord, DecompRecord, MarksRecord, RadicalRecord, VerifyRecord,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dworkbench"));
    cmd.args(args).env_remove("DWORKBENCH_CACHE");
    if let Some(dir) = cache {
        cmd.env("DWORKBENCH_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let text = stdout(args);
    let rec: T = serde_json::from_str(&text).unwrap();
    assert_eq!(emit::json(&rec).unwrap(), text, "{args:?}");
    let again: T = serde_json::from_str(&emit::json(&rec).unwrap()).unwrap();
    assert_eq!(again, rec);
    rec
}

/// Fixed points of `W_K` on the cosets of `W_J` in `S_3`, from explicit
/// permutations of three points.
fn s3_marks() -> Vec<Vec<String>> {
    type Perm = [usize; 3];
    let compose = |a: &Perm, b: &Perm| -> Perm { [a[b[0]], a[b[1]], a[b[2]]] };
    let all: Vec<Perm> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let trivial = vec![[0, 1, 2]];
    let gen1 = vec![[0, 1, 2], [1, 0, 2]];
    let subgroups = [trivial, gen1, all.clone()];
    let cosets = |h: &Vec<Perm>| -> Vec<Vec<Perm>> {
        let mut out: Vec<Vec<Perm>> = Vec::new();
        for g in &all {
            let mut c: Vec<Perm> = h.iter().map(|x| compose(g, x)).collect();
            c.sort();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    };
    subgroups
        .iter()
        .map(|hj| {
            subgroups
                .iter()
                .map(|hk| {
                    cosets(hj)
                        .iter()
                        .filter(|c| {
                            hk.iter().all(|k| {
                                let mut moved: Vec<Perm> = c.iter().map(|x| compose(k, x)).collect();
                                moved.sort();
                                &moved == *c
                            })
                        })
                        .count()
                        .to_string()
                })
                .collect()
        })
        .collect()
}

#[test]
fn a2_marks_match_brute_force() {
    let rec: MarksRecord = round_trip(&["marks", "A2", "--format", "json"]);
    assert_eq!(rec.matrix, s3_marks());
    let types: Vec<&str> = rec.labels.iter().map(|l| l.iso_type.as_str()).collect();
    assert_eq!(types, ["1", "A1", "A2"]);
}

#[test]
fn f4_marks_diagonal() {
    let rec: MarksRecord = round_trip(&["marks", "F4", "--format", "json"]);
    let diag: Vec<&str> = (0..12).map(|i| rec.matrix[i][i].as_str()).collect();
    assert_eq!(diag, ["1152", "48", "48", "12", "4", "8", "12", "2", "2", "2", "2", "1"]);
}

#[test]
fn every_artifact_round_trips() {
    let d: DecompRecord = round_trip(&["decomp", "H3", "--format", "json"]);
    assert_eq!(d.primes.iter().map(|p| p.p).collect::<Vec<_>>(), [2, 3, 5]);
    let r: RadicalRecord = round_trip(&["radical", "F4", "-p", "2", "--format", "json"]);
    let part = r.parts.iter().find(|p| p.characteristic == 2).unwrap();
    assert_eq!((part.dimension, part.basis.len(), part.irreducibles), (15, 15, 1));
    let c: CartanRecord = round_trip(&["cartan", "A2", "-p", "2", "--format", "json"]);
    assert!(c.primes[0].equal);
    let v: VerifyRecord = round_trip(&["verify", "A3", "--format", "json"]);
    assert!(v.passed());
}

#[test]
fn coprime_prime_gives_identity() {
    let d: DecompRecord = round_trip(&["decomp", "A2", "-p", "7", "--format", "json"]);
    let p = &d.primes[0];
    assert_eq!(p.f, [0, 1, 2]);
    assert_eq!(p.matrix, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    assert!(p.entries.iter().all(|e| e == "."));
}

#[test]
fn f4_mod_3_has_seven_classes() {
    let d: DecompRecord = round_trip(&["decomp", "F4", "-p", "3", "--format", "json"]);
    assert_eq!(d.primes[0].classes.len(), 7);
    assert_eq!(d.primes[0].s, 7);
}

#[test]
fn cartan_text_reports_equality() {
    let text = stdout(&["cartan", "A2", "-p", "2"]);
    assert!(text.contains("p = 2: EQUAL"), "{text}");
}

#[test]
fn text_and_csv_outputs() {
    let text = stdout(&["decomp", "H3"]);
    assert!(text.contains("6  H3     {s0,s1,s2}  1     3, 1, 5 (1)"), "{text}");
    let csv = stdout(&["decomp", "H3", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.starts_with("#,type,subset,beta,p = 2,p = 3,p = 5\n"));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["marks", "B3"],
        vec!["decomp", "B3", "--format", "json"],
        vec!["radical", "B3", "--format", "csv"],
        vec!["cartan", "B3", "-p", "3"],
    ] {
        let plain = run(&args, None);
        let cold = run(&args, Some(dir.path()));
        let warm = run(&args, Some(dir.path()));
        assert!(plain.status.success() && cold.status.success() && warm.status.success());
        assert_eq!(cold.stdout, plain.stdout, "{args:?}");
        assert_eq!(warm.stdout, cold.stdout, "{args:?}");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 4);
}

#[test]
fn corrupted_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["marks", "H3", "--format", "json"];
    let first = run(&args, Some(dir.path()));
    let path = dir.path().join("marks-H3.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"120\"", "\"121\"")).unwrap();
    let second = run(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    std::fs::write(&path, "not json").unwrap();
    let third = run(&args, Some(dir.path()));
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn cache_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    let out = run(&["marks", "A3", "--cache", flag], Some(env_dir.path()));
    assert!(out.status.success());
    assert!(flag_dir.path().join("marks-A3.json").exists());
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args, None).status.code();
    assert_eq!(code(&["marks", "E8"]), Some(3));
    assert_eq!(code(&["marks", "E7"]), Some(3));
    assert_eq!(code(&["decomp", "A4", "--budget", "100"]), Some(3));
    assert_eq!(code(&["marks", "X9"]), Some(2));
    assert_eq!(code(&["marks", "D3"]), Some(2));
    assert_eq!(code(&["decomp", "A2", "-p", "4"]), Some(2));
    assert_eq!(code(&["marks", "A2", "--budget", "0"]), Some(2));
    assert_eq!(code(&["marks", "A2", "--format", "xml"]), Some(2));
    assert_eq!(code(&["frobnicate", "A2"]), Some(2));
    assert_eq!(code(&["marks", "A2"]), Some(0));
}

#[test]
fn verify_h4_passes() {
    let out = run(&["verify", "H4"], None);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS  published decomposition table"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_classical_types_pass() {
    for ty in ["A4", "B4", "D5"] {
        let out = run(&["verify", ty], None);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{ty}: {text}");
        assert!(text.contains("PASS  group algebra products"), "{text}");
    }
}
