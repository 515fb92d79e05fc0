use std::path::Path;
use std::process::{Command, Output};

use repstab::fimod::FIModuleTable;
use repstab::partitions::Partition;
use repstab::reps::SymRep;
use repstab::store;
use repstab::symchar::{CharacterTable, CharacterVector};

fn repstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repstab"))
        .args(args)
        .env_remove("REPSTAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The weight-one even table to `k = 7`, written as the CLI emits it.
fn write_pairs(dir: &Path) -> std::path::PathBuf {
    let o = repstab(&["config", "--parity", "even", "--lie-weight", "1", "--kmax", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let path = dir.join("pairs.json");
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

#[test]
fn config_even_weight_one_rows() {
    let o = repstab(&["config", "--parity", "even", "--lie-weight", "1", "--kmax", "6"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("| k | decomposition | dimension |"), "{out}");
    assert!(out.contains("| 4 | V(0) + V(1) + V(2) | 6 |"), "{out}");
    assert!(out.contains("| 6 | V(0) + V(1) + V(2) | 15 |"), "{out}");
}

#[test]
fn config_odd_weight_one_rows() {
    let o = repstab(&["config", "--parity", "odd", "--lie-weight", "1", "--kmax", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("| 5 | V(1) + V(1,1) | 10 |"), "{}", stdout(&o));
}

#[test]
fn json_output_is_deterministic_and_decodes() {
    let args = ["config", "--parity", "odd", "--lie-weight", "2", "--kmax", "5", "--format", "json"];
    let a = repstab(&args);
    let b = repstab(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let table: FIModuleTable = store::decode(stdout(&a).trim_end()).unwrap();
    assert_eq!(table.max_n, 5);
    assert!(table.fi_sharp);
}

#[test]
fn fimod_info_on_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = write_pairs(dir.path());
    let o = repstab(&["fimod", "info", path_str(&pairs)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("| weight | 2 |"), "{out}");
    assert!(out.contains("| dimension polynomial | 1/2 k^2 - 1/2 k for k ≥ 0 |"), "{out}");
    assert!(out.contains("| repstab onset | 4 (exact) |"), "{out}");
    assert!(out.contains("| H0 generators | M(2) |"), "{out}");
}

#[test]
fn chartab_rank_zero_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let o = repstab(&["chartab", "--n", "0", "--cache-dir", path_str(&cache)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("| () | 1 |"));

    let out = dir.path().join("s4.json");
    let o = repstab(&["chartab", "--n", "4", "--out", path_str(&out), "--cache-dir", path_str(&cache)]);
    assert_eq!(code(&o), 0);
    let table: CharacterTable = store::decode(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(table.partitions.len(), 5);
    assert!(cache.join("chartab-4.json").exists());
    // Second run reads the cache and must print the same bytes.
    let again = repstab(&["chartab", "--n", "4", "--cache-dir", path_str(&cache)]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn chartab_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = repstab(&["chartab", "--n", "2", "--format", "csv", "--cache-dir", path_str(dir.path())]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "λ \\ μ,\"(1,1)\",(2)\nclass size,1,1\n(2),1,1\n\"(1,1)\",1,-1\n");
}

#[test]
fn decompose_genuine_and_virtual() {
    let dir = tempfile::tempdir().unwrap();
    // Permutation character of S_3 on three points: V(3) + V(2,1).
    let perm = dir.path().join("perm.json");
    std::fs::write(&perm, store::encode(&CharacterVector::from_ints(3, &[3, 1, 0])).unwrap()).unwrap();
    let o = repstab(&["decompose", "--character", path_str(&perm), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rep: SymRep = store::decode(stdout(&o).trim_end()).unwrap();
    assert_eq!(rep, SymRep::from_pairs(3, [(p(&[3]), 1), (p(&[2, 1]), 1)]).unwrap());

    // A bare payload is accepted too; trivial minus sign is virtual.
    let virt = dir.path().join("virt.json");
    std::fs::write(&virt, r#"{"n":2,"values":[[0,1],[2,1]]}"#).unwrap();
    let o = repstab(&["decompose", "--character", path_str(&virt)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("| (1,1) | -1 |"), "{out}");
    assert!(out.contains("virtual character"), "{out}");
}

#[test]
fn fimod_tensor_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = FIModuleTable::free("M(1)", &[(p(&[1]), 1)], 6).unwrap();
    let a = dir.path().join("m1.json");
    std::fs::write(&a, store::encode(&m1).unwrap()).unwrap();
    let out = dir.path().join("sq.json");
    let o = repstab(&["fimod", "tensor", path_str(&a), path_str(&a), "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let t: FIModuleTable = store::decode(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.dims(), vec![0, 1, 4, 9, 16, 25, 36]);
    assert_eq!(t.metadata.weight_bound, Some(2));
    assert!(stdout(&o).contains("bounds: weight ≤ 2"), "{}", stdout(&o));
}

#[test]
fn repstab_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = write_pairs(dir.path());
    let ok = repstab(&["repstab-check", path_str(&pairs), "--range", "4"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("| result | PASS |"));
    let bad = repstab(&["repstab-check", path_str(&pairs), "--range", "3"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn freelie_reports_bound() {
    let o = repstab(&["freelie", "--d", "2", "--m", "1", "--piece", "4", "--nmax", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("| 3 | V(1) + V(1,1) | 3 |"), "{out}");
    assert!(out.contains("Lie weight 2 PASS"), "{out}");
}

#[test]
fn verify_first_suite_passes() {
    let o = repstab(&["verify", "--suite", "paper-example"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("| 1 | PASS |"), "{out}");
    assert!(out.contains("| 2 | PASS |"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&repstab(&["config", "--parity", "sideways", "--lie-weight", "1", "--kmax", "4"])), 2);
    assert_eq!(code(&repstab(&["freelie", "--d", "1", "--m", "1", "--piece", "2", "--nmax", "3"])), 2);
    assert_eq!(code(&repstab(&["config", "--parity", "even", "--lie-weight", "0", "--kmax", "4"])), 2);
    assert_eq!(code(&repstab(&["verify", "--suite", "everything"])), 2);
    assert_eq!(code(&repstab(&[])), 2);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(code(&repstab(&["fimod", "info", path_str(&missing)])), 3);

    let pairs = write_pairs(dir.path());
    let text = std::fs::read_to_string(&pairs).unwrap();
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, text.replacen("\"n\":4", "\"n\":5", 1)).unwrap();
    let o = repstab(&["fimod", "info", path_str(&tampered)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));

    let wrong_kind = dir.path().join("perm.json");
    std::fs::write(&wrong_kind, store::encode(&CharacterVector::from_ints(2, &[1, 1])).unwrap()).unwrap();
    assert_eq!(code(&repstab(&["fimod", "info", path_str(&wrong_kind)])), 3);
}

#[test]
fn scale_errors_exit_four() {
    assert_eq!(code(&repstab(&["config", "--parity", "odd", "--lie-weight", "2", "--kmax", "9"])), 4);
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&repstab(&["chartab", "--n", "40", "--cache-dir", path_str(dir.path())])), 4);
}

#[test]
fn verbose_logs_go_to_stderr() {
    let quiet = repstab(&["config", "--parity", "even", "--lie-weight", "1", "--kmax", "4"]);
    let loud = repstab(&["config", "--parity", "even", "--lie-weight", "1", "--kmax", "4", "--verbose"]);
    assert_eq!(quiet.stdout, loud.stdout);
    assert!(quiet.stderr.is_empty());
    assert!(!loud.stderr.is_empty());
}
