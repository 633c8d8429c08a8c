//! End-to-end runs of the `krlab` binary.

use std::process::{Command, Output};

fn krlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krlab"))
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

/// `(n, m, value)` rows of a CSV table, header skipped.
fn rows(csv: &str) -> Vec<(u64, u64, i128)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn count_kr1_at_nine_totals_seven() {
    let o = krlab(&["count", "--variant", "kr1", "--max-n", "9"]);
    assert!(o.status.success());
    let total: i128 = rows(&stdout(&o))
        .iter()
        .filter(|r| r.0 == 9)
        .map(|r| r.2)
        .sum();
    assert_eq!(total, 7);
}

#[test]
fn count_at_zero_is_one_row() {
    let o = krlab(&["count", "--variant", "kr1", "--max-n", "0"]);
    assert_eq!(rows(&stdout(&o)), vec![(0, 0, 1)]);
}

#[test]
fn count_matches_series_for_kr5() {
    let c = krlab(&["count", "--variant", "kr5", "--max-n", "20"]);
    let s = krlab(&["series", "--variant", "kr5", "--max-n", "20"]);
    assert!(c.status.success() && s.status.success());
    assert_eq!(rows(&stdout(&c)), rows(&stdout(&s)));
}

#[test]
fn json_output_is_byte_stable() {
    let a = krlab(&[
        "series",
        "--variant",
        "KRC1_2",
        "--max-n",
        "15",
        "--format",
        "json",
    ]);
    let b = krlab(&[
        "series",
        "--variant",
        "krc12",
        "--max-n",
        "15",
        "--format",
        "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["recipe"], "KRC1_2");
}

#[test]
fn product_side_counts() {
    let o = krlab(&["product", "--variant", "cong1", "--max-n", "9"]);
    assert!(rows(&stdout(&o)).contains(&(9, 0, 7)));
    let o = krlab(&["product", "--variant", "kr1", "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = krlab(&["verify", "--suite", "roundtrip", "--max-n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["passed"], true);
    assert!(v["wall_time_seconds"].is_number());
    let o = krlab(&["verify", "--suite", "conjectures", "--max-n", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["order"] == 30));
}

#[test]
fn verify_report_is_deterministic_apart_from_time() {
    let a = krlab(&["verify", "--suite", "theorems", "--max-n", "12"]);
    let b = krlab(&["verify", "--suite", "theorems", "--max-n", "12"]);
    let pa: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let pb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(pa["report"], pb["report"]);
}

#[test]
fn bijection_reproduces_the_decoding_example() {
    let o = krlab(&[
        "bijection",
        "--variant",
        "krb11",
        "--parts",
        "1,6,7,9,11,14,14",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("mu=3+3, eta=6+9"), "{out}");
    assert!(out.contains("|beta|=41"), "{out}");
    assert!(out.contains("62 = 41 + 6 + 15"), "{out}");
}

#[test]
fn bijection_json_trace() {
    let o = krlab(&[
        "bijection",
        "--variant",
        "krc1-2",
        "--parts",
        "1,2,4,6,6,7,9,11,11,13,15,15,16",
        "--trace",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ledger"], "116 = 89 + 3 + (1 + 5) + 18");
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn bijection_of_a_base_is_all_zero() {
    let o = krlab(&["bijection", "--variant", "kr1", "--parts", "1,2,4,5,7,9,11"]);
    let out = stdout(&o);
    assert!(out.contains("mu=0+0+0, eta=0+0"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let o = krlab(&["bijection", "--variant", "kr1", "--parts", "3,3,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("distance 2"));
    let o = krlab(&["bijection", "--variant", "kr1", "--parts", "1,5,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("index 2"));
    let o = krlab(&["count", "--variant", "kr7", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = krlab(&["count", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_krlab"))
        .args(["count", "--variant", "kr2", "--max-n", "10"])
        .env("KRLAB_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_krlab"))
        .args(["count", "--variant", "kr2", "--max-n", "10"])
        .env("KRLAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("krlab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kr3.csv");
    let o = krlab(&[
        "count",
        "--variant",
        "kr3",
        "--max-n",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("n,m,count\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
