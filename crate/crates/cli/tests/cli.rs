use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fixgroups"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn subgroup_operations() {
    let dir = TempDir::new().unwrap();
    let even = write(&dir, "even.txt", "a a\na b\na B\n# index two\n");
    let v = json(&run(&["index", p(&even)]));
    assert_eq!(v["op"], "index");
    assert_eq!(v["result"]["index"], 2);
    assert_eq!(v["result"]["rank"], 3);
    assert!(v["witnesses"].is_array());

    let v = json(&run(&["fold", p(&even)]));
    assert_eq!(v["result"]["vertices"], 2);

    let v = json(&run(&["member", p(&even), "b b"]));
    assert_eq!(v["result"]["member"], true);
    let v = json(&run(&["member", p(&even), "b"]));
    assert_eq!(v["result"]["member"], false);

    let squares = write(&dir, "sq.txt", "a a\n");
    let cubes = write(&dir, "cu.txt", "a a a\n");
    let v = json(&run(&["intersect", p(&squares), p(&cubes)]));
    assert_eq!(v["result"]["basis"][0], "a a a a a a");
}

#[test]
fn probes_and_fix() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.txt", "a -> a b\nb -> b\n");
    let v = json(&run(&["--profile", "quick", "fix", p(&phi), "--probe"]));
    assert_eq!(v["result"]["rank"], 2);
    assert_eq!(v["result"]["basis"][0], "b");
    assert_eq!(v["result"]["basis"][1], "a b A");
    assert_eq!(v["result"]["inert_probe"]["verdict"], "pass");

    let cyclic = write(&dir, "c.txt", "a b\n");
    let v = json(&run(&["probe-compress", p(&cyclic), "--gens", "1", "--len", "2"]));
    assert_eq!(v["result"]["verdict"], "pass");
}

#[test]
fn presentation_operations() {
    let dir = TempDir::new().unwrap();
    let s2 = write(&dir, "s2.txt", "a b c d\na b A B c d C D\n");
    let v = json(&run(&["abel", p(&s2)]));
    assert_eq!(v["result"]["invariants"], "Z^4");
    let v = json(&run(&["pieces", p(&s2)]));
    assert_eq!(v["result"]["satisfies"], true);
    let v = json(&run(&["dehn", p(&s2), "b A B c d C D a"]));
    assert_eq!(v["result"]["trivial"], true);

    let klein = write(&dir, "k.txt", "a b | a b A b\n");
    let v = json(&run(&["tc", p(&klein), "--subgroup", p(&write(&dir, "h.txt", "a\nb b\n"))]));
    assert_eq!(v["result"]["index"], 2);
    let v = json(&run(&["klein", "b a"]));
    assert_eq!(v["result"]["m"], 1);
    assert_eq!(v["result"]["n"], -1);
}

#[test]
fn product_operations() {
    let v = json(&run(&["prod", "rank", "NS2^2 x C2"]));
    assert_eq!(v["result"]["rank"], 5);
    let v = json(&run(&["prod", "type", "F2 x Z"]));
    assert_eq!(v["result"]["type"], "mixed");
    let v = json(&run(&["prod", "witness", "hyp-FF"]));
    assert_eq!(v["result"]["status"], "pass");
    assert_eq!(v["result"]["numbers"]["fix_rank"]["lower"], 4);
    assert_eq!(v["result"]["numbers"]["k_rank_upper"], 3);

    let dir = TempDir::new().unwrap();
    let swap = write(&dir, "swap.txt", "a -> c\nb -> d\nc -> a\nd -> b\n");
    let v = json(&run(&["prod", "decompose", "F2 x F2", p(&swap)]));
    assert_eq!(v["result"]["rectangular"], true);
    assert_eq!(v["result"]["permutation"], serde_json::json!([1, 0]));
}

#[test]
fn syntax_errors_carry_positions() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "a b\na ?\n");
    let out = run(&["rank", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 3"), "{err}");

    let out = run(&["prod", "rank", "F2 x Q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paper_report() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify-paper", "--check", "schreier-f2", "--check", "product-rank-type", "--json", p(&path)]);
    let v = json(&out);
    assert_eq!(v["version"], "1");
    assert_eq!(v["profile"], "default");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert_eq!(checks[0]["id"], "schreier-f2");
    assert_eq!(checks[0]["status"], "pass");
    assert_eq!(checks[0]["numbers"]["index"], 2);
    assert_eq!(checks[0]["numbers"]["rank"], 3);
    let file: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file, v);

    // identical output across runs
    let again = run(&["verify-paper", "--check", "schreier-f2", "--check", "product-rank-type"]);
    assert_eq!(again.stdout, out.stdout);

    let out = run(&["verify-paper", "--check", "no-such-check"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-check"));
}

#[test]
fn evidence_does_not_fail() {
    let out = run(&["verify-paper", "--profile", "quick", "--check", "exs-no-bh/z-f2"]);
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "evidence");
}
