use std::path::PathBuf;
use std::process::{Command, Output};

use mwis_core::dimacs::parse_dimacs;
use serde_json::Value;

fn mwis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwis"))
        .args(args)
        .output()
        .unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mwis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";

#[test]
fn solve_five_cycle() {
    let path = scratch("c5.dimacs", C5);
    let out = mwis(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["weight"], 2);
    assert!(v["metrics"]["subproblems"].as_u64().unwrap() >= 1);
    assert!(v["leaves_count"].as_u64().unwrap() >= 1);
    // the printed solution is independent in the file's numbering
    let g = parse_dimacs(C5).unwrap();
    let sol: Vec<usize> = v["solution"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize - 1)
        .collect();
    assert!(g.is_independent(&sol.into_iter().collect()));
}

#[test]
fn triangle_is_rejected_by_check_class() {
    let path = scratch("k3.dimacs", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let out = mwis(&["check-class", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["in_class"], false);
    assert_eq!(v["witness"]["kind"], "triangle");
    assert_eq!(v["witness"]["vertices"], serde_json::json!([1, 2, 3]));

    let out = mwis(&["solve", "--check-class", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "class-violation");
}

#[test]
fn bad_input_exits_with_three() {
    let path = scratch("loop.dimacs", "p edge 2 1\ne 1 1\n");
    let out = mwis(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
    assert_eq!(
        mwis(&["solve", "/definitely/not/here"]).status.code(),
        Some(3)
    );
}

#[test]
fn generated_instances_parse_back() {
    let out = mwis(&[
        "gen",
        "--family",
        "c5-blowup",
        "--classes",
        "2,1,1,1,1",
        "--weights",
        "1:1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let g = parse_dimacs(&text).unwrap();
    assert_eq!(g.n(), 6);
    let path = scratch("blowup.dimacs", &text);
    assert_eq!(json(&mwis(&["solve", path.to_str().unwrap()]))["weight"], 3);
    let bad = mwis(&["gen", "--family", "nope"]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn fuzz_agrees_with_oracle() {
    let out = mwis(&[
        "fuzz", "--count", "100", "--max-n", "12", "--seed", "3", "--cover",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["instances"], 100);
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn bench_prints_a_row_per_size() {
    let out = mwis(&["bench", "--sizes", "10,20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    // alpha equals the formula column
    for row in text.lines().skip(1) {
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[2], cols[3]);
    }
}
