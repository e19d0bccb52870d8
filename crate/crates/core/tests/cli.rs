use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const DIAMOND: &str = "# diamond\na b\na c\nb d\nc d\n";

fn pathinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathinv"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn basis_reports_size_and_bound() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", DIAMOND);
    let out = dir.path().join("b.json");
    let o = pathinv(&["basis", s(&g), "--out", s(&out)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "pairs=1 bound=12\nwithin_bound=true\n");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json[0]["p"], serde_json::json!(["a", "b", "d"]));
    assert_eq!(json[0]["q"], serde_json::json!(["a", "c", "d"]));
}

#[test]
fn computed_basis_verifies() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb a\nb c\nc d\nd b\na c\n");
    let b = dir.path().join("b.json");
    assert!(pathinv(&["basis", s(&g), "--out", s(&b)]).status.success());
    let o = pathinv(&["verify", s(&g), s(&b)]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["verified"], true);
    assert_eq!(report["missing"], serde_json::json!([]));
    let text = stdout(&o);
    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('"')?.split('"').next())
        .collect();
    assert_eq!(
        keys,
        [
            "verified",
            "missing",
            "closure_size",
            "iterations",
            "slack_used"
        ]
    );
}

#[test]
fn empty_basis_fails_verification() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", DIAMOND);
    let b = write(&dir, "b.json", "[]");
    let o = pathinv(&["verify", s(&g), s(&b), "--check-len", "2", "--slack", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["verified"], false);
    assert_eq!(
        report["missing"],
        serde_json::json!([{ "p": ["a", "b", "d"], "q": ["a", "c", "d"] }])
    );
}

#[test]
fn two_cycle_basis_verifies_with_small_slack() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb a\n");
    let b = write(
        &dir,
        "b.json",
        r#"[{"p": ["a", "b", "a"], "q": ["a"], "tag": "scg-cycle"}]"#,
    );
    let o = pathinv(&["verify", s(&g), s(&b), "--check-len", "3", "--slack", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn walk_budget_exhaustion_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb a\nb c\nc a\na c\nc b\n");
    let b = write(&dir, "b.json", "[]");
    let o = pathinv(&["verify", s(&g), s(&b), "--max-walks", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "BudgetExceeded");
}

#[test]
fn stats_counts_components() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb a\nc d\nd c\na c\nb d\n");
    let o = pathinv(&["stats", s(&g)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "vertices=4\nedges=6\nsccs=2\ndag_edges=1\n");
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let loops = write(&dir, "loop.txt", "a b\nb b\n");
    let o = pathinv(&["stats", s(&loops)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let missing = dir.path().join("nope.txt");
    assert_eq!(pathinv(&["stats", s(&missing)]).status.code(), Some(2));
    let g = write(&dir, "g.txt", DIAMOND);
    let bad = write(
        &dir,
        "b.json",
        r#"[{"p": ["a", "d"], "q": ["a", "b", "d"], "tag": "dag"}]"#,
    );
    let o = pathinv(&["verify", s(&g), s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let o = pathinv(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "UsageError");
}

#[test]
fn synth_reduces_pure_noise() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("dump.json");
    let o = pathinv(&[
        "synth",
        "--vertices",
        "5",
        "--dim",
        "3",
        "--edge-prob",
        "0.6",
        "--seed",
        "2",
        "--outliers",
        "0",
        "--step-size",
        "0.02",
        "--dump",
        s(&dump),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["seed"], 2);
    assert_eq!(report["epochs"], 200);
    assert!(report["error_after"].as_f64().unwrap() < report["error_before"].as_f64().unwrap());
    let dumped: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(dumped["dim"], 3);
    assert_eq!(dumped["edges"][0]["optimized"].as_array().unwrap().len(), 9);
}

#[test]
fn sequential_flag_gives_identical_output() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb c\nc a\nc d\nd e\ne c\na e\n");
    let b = dir.path().join("b.json");
    let par = pathinv(&["basis", s(&g), "--out", s(&b)]);
    let par_json = std::fs::read(&b).unwrap();
    let seq = pathinv(&["--sequential", "basis", s(&g), "--out", s(&b)]);
    assert_eq!(par.stdout, seq.stdout);
    assert_eq!(par_json, std::fs::read(&b).unwrap());
    let v1 = pathinv(&["verify", s(&g), s(&b)]);
    let v2 = pathinv(&["verify", "--sequential", s(&g), s(&b)]);
    assert_eq!(v1.stdout, v2.stdout);
    assert_eq!(v1.status.code(), Some(0));
}
