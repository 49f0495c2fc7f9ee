use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE_ONE: &str = "\
candidates: a b c
X: a c b
k: 3
budget: 1
ranking-costs: 1 1 1 1 1 1        # optional; default all 1; aligned with R lines
candidate-costs: a=1 b=1 c=1      # optional; default all 1
R: a b c
R: a b c
R: a b c
R: a c b
R: a c b
R: c b a
";

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn kemeny(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kemeny"))
        .args(args)
        .env_remove("KEMENY_ORACLE_CAP")
        .output()
        .unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn rdel_on_example_one_deletes_r6() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(&dir, "ex1.txt", EXAMPLE_ONE);
    let out = kemeny(&["rdel", file.to_str().unwrap(), "--json", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &records(&out)[0];
    assert_eq!(rec["decision"], "YES");
    assert_eq!(rec["optimum"], 1);
    assert_eq!(rec["witness"]["indices"], serde_json::json!([6]));
    assert_eq!(rec["verification"], "pass");
    assert_eq!(rec["cross_check"], "pass");
    assert_eq!(rec["instance_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn oracle_dollar_min_budget_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(&dir, "ex1.txt", EXAMPLE_ONE);
    let out = kemeny(&["oracle:dollar", file.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["optimum"], 1);
}

#[test]
fn swap_below_minimum_is_no_with_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let text = EXAMPLE_ONE
        .replace("k: 3", "k: 2")
        .replace("budget: 1", "budget: 0");
    let file = write(&dir, "tight.txt", &text);
    let out = kemeny(&["swap", file.to_str().unwrap(), "--json", "--verify"]);
    assert_eq!(out.status.code(), Some(1));
    let rec = &records(&out)[0];
    assert_eq!(rec["decision"], "NO");
    assert_eq!(rec["optimum"], 3);
    assert_eq!(rec["verification"], "pass");
}

#[test]
fn mismatched_action_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(&dir, "ex1.txt", EXAMPLE_ONE);
    let out = kemeny(&["cdel-k0", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k = 0"));
    let out = kemeny(&["cdel-single", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let partial = write(&dir, "partial.txt", "candidates: a b\nX: a b\nR: b\n");
    assert_eq!(kemeny(&["dollar", partial.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(kemeny(&["pks", partial.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(&dir, "bad.txt", "candidates: a b\nX: a a b\n");
    let out = kemeny(&["pks", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("duplicate"), "{err}");
    assert_eq!(kemeny(&["nonsense", file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn oracle_caps_are_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(&dir, "ex1.txt", EXAMPLE_ONE);
    let out = kemeny(&["oracle:dollar", file.to_str().unwrap(), "--cap", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_kemeny"))
        .args(["oracle:pks", file.to_str().unwrap()])
        .env("KEMENY_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn gen_then_batch_solve() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6 {
        let out = kemeny(&[
            "gen", "--m", "5", "--n", "4", "--model", "mallows", "--phi", "0.6", "--seed",
            &seed.to_string(), "--k", "4", "--budget", "2",
        ]);
        assert_eq!(out.status.code(), Some(0));
        write(&dir, &format!("g{seed}.txt"), &String::from_utf8(out.stdout).unwrap());
    }
    let again = kemeny(&["gen", "--m", "5", "--n", "4", "--model", "mallows", "--phi", "0.6", "--seed", "0"]);
    let first = std::fs::read_to_string(dir.path().join("g0.txt")).unwrap();
    assert_eq!(
        first.replace("k: 4", "k: 0").replace("budget: 2", "budget: 0"),
        String::from_utf8(again.stdout).unwrap()
    );

    let pattern = format!("{}/g*.txt", dir.path().display());
    for action in ["pks", "dollar", "rdel", "swap", "oracle:swap"] {
        let out = kemeny(&[action, "--glob", &pattern, "--json", "--verify"]);
        let recs = records(&out);
        assert_eq!(recs.len(), 6, "{action}");
        let any_no = recs.iter().any(|r| r["decision"] == "NO");
        assert_eq!(out.status.code(), Some(if any_no { 1 } else { 0 }), "{action}");
        assert!(recs.iter().all(|r| r["verification"] == "pass"));
    }
    assert_eq!(kemeny(&["gen", "--m", "3", "--n", "1", "--model", "mallows", "--phi", "2"]).status.code(), Some(2));
    let missing = format!("{}/none*.txt", dir.path().display());
    assert_eq!(kemeny(&["pks", "--glob", &missing]).status.code(), Some(2));
}
