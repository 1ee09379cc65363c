//! End-to-end runs of the binary.

use std::path::{Path, PathBuf};
use std::process::Command;

fn gcn() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gcn"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gcn-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_ok(cmd: &mut Command) -> String {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "command failed: {}\n{}",
        String::from_utf8_lossy(&out.stderr),
        String::from_utf8_lossy(&out.stdout)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn exact_on_c5() {
    let input = tmp("c5.txt");
    write(&input, "0 1\n1 2\n2 3\n3 4\n0 4\n");
    let out = run_ok(gcn().args(["exact", "--input"]).arg(&input).args(["--r", "1", "--mode", "strong"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["value"], 3);
    let out = run_ok(gcn().args(["exact", "--input"]).arg(&input).args(["--r", "2", "--mode", "weak"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["value"], 4);
}

#[test]
fn evaluate_supplied_order() {
    let input = tmp("path4.txt");
    write(&input, "0 1\n1 2\n2 3\n");
    let order = tmp("order4.txt");
    write(&order, "0 1 2 3\n");
    let out = run_ok(
        gcn()
            .args(["evaluate", "--input"])
            .arg(&input)
            .args(["--order"])
            .arg(&order)
            .args(["--r", "1..3", "--mode", "strong", "--format", "csv"]),
    );
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "r,mode,cost");
    assert!(lines[1..].iter().all(|l| l.ends_with(",2")));
}

#[test]
fn decompose_emits_passing_certificate() {
    let graph = tmp("rmp.g6");
    let rot = tmp("rmp.rot");
    run_ok(
        gcn()
            .args(["generate", "--family", "random-maximal-planar", "--params", "40", "--seed", "9", "--out"])
            .arg(&graph)
            .arg("--emb-out")
            .arg(&rot),
    );
    let out = run_ok(
        gcn()
            .args(["decompose", "--input"])
            .arg(&graph)
            .arg("--embedding")
            .arg(&rot)
            .args(["--strategy", "ipd-planar", "--r", "1..4"]),
    );
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["certificate"]["all_pass"], true);
    assert!(json["certificate"]["width"]["width"].as_u64().unwrap() <= 2);

    // the pebbled builder reports its trace
    let sp = tmp("sp.txt");
    run_ok(
        gcn()
            .args(["generate", "--family", "series-parallel", "--params", "30", "--seed", "4", "--out"])
            .arg(&sp),
    );
    let k4 = tmp("k4.txt");
    write(&k4, "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = run_ok(
        gcn()
            .args(["decompose", "--input"])
            .arg(&sp)
            .args(["--strategy", "h-ipd", "--H"])
            .arg(&k4)
            .args(["--apex", "0", "--r", "1..3"]),
    );
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(!json["builder_trace"]["steps"].as_array().unwrap().is_empty());
    assert_eq!(json["minor_certificate"], serde_json::Value::Null);
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let a = run_ok(gcn().args(["verify", "--seed", "123"]));
    let b = run_ok(gcn().args(["verify", "--seed", "123"]));
    assert_eq!(a, b);
    let json: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(json["all_pass"], true);
}

#[test]
fn sweep_on_triangulated_grid_is_monotone() {
    let graph = tmp("grid.txt");
    let rot = tmp("grid.rot");
    run_ok(
        gcn()
            .args(["generate", "--family", "grid", "--params", "20x20", "--out"])
            .arg(&graph)
            .arg("--emb-out")
            .arg(&rot),
    );
    let out = run_ok(
        gcn()
            .args(["sweep", "--input"])
            .arg(&graph)
            .arg("--embedding")
            .arg(&rot)
            .args(["--strategy", "lexbfs-planar", "--r", "1..5", "--format", "csv"]),
    );
    let mut strong = Vec::new();
    for line in out.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        strong.push(fields[5].parse::<usize>().unwrap());
        // measured against 5r+1
        let r: usize = fields[4].parse().unwrap();
        assert!(strong[strong.len() - 1] <= 5 * r + 1);
    }
    assert!(strong.windows(2).all(|w| w[0] <= w[1]), "costs not monotone: {strong:?}");
}

#[test]
fn kt_on_complete_graph_reports_minor() {
    let k5 = tmp("k5.g6");
    run_ok(gcn().args(["generate", "--family", "complete", "--params", "5", "--out"]).arg(&k5));
    let out = run_ok(
        gcn()
            .args(["decompose", "--input"])
            .arg(&k5)
            .args(["--strategy", "kt-flat", "--t", "5"]),
    );
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(json["minor_certificate"]["branch_sets"].as_array().unwrap().len() == 5);
}
