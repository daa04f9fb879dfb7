use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paramenum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn vc_lists_and_counts() {
    let d = TempDir::new().unwrap();
    let g = file(&d, "tri.graph", "p graph 3 3\ne 0 1\ne 0 2\ne 1 2\n");
    let o = run(&["vc", "--graph", &g, "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 1\n0 2\n1 2\n");
    let o = run(&["vc", "--graph", &g, "-k", "2", "--count"]);
    assert_eq!(stdout(&o), "3\n");
    assert_eq!(run(&["vc", "--graph", &g, "-k", "1", "--exists"]).status.code(), Some(1));
    assert_eq!(run(&["vc", "--graph", &g, "-k", "2", "--exists"]).status.code(), Some(0));
}

#[test]
fn maxones_with_every_oracle() {
    let d = TempDir::new().unwrap();
    let f = file(
        &d,
        "or.gamma",
        "nvars 3\nrelation OR 2 { 01 10 11 }\nconstraint OR 0 1\nconstraint OR 1 2\n",
    );
    for oracle in ["auto", "brute", "dualhorn", "bb"] {
        let o = run(&["maxones", "--formula", &f, "-k", "2", "--oracle", oracle]);
        assert_eq!(o.status.code(), Some(0), "{oracle}");
        assert_eq!(stdout(&o), "0 1 2\n1 2\n0 2\n0 1\n", "{oracle}");
    }
    let o = run(&["maxones", "--formula", &f, "-k", "1", "--oracle", "affine"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["maxones", "--formula", &f, "-k", "4", "--exists"]).status.code(), Some(1));
}

#[test]
fn backdoor_prints_dimacs_indices() {
    let d = TempDir::new().unwrap();
    let c = file(&d, "f.cnf", "c example\np cnf 3 1\n1 2 -3 0\n");
    assert_eq!(stdout(&run(&["backdoor", "--cnf", &c, "-k", "1"])), "1\n2\n");
    assert_eq!(stdout(&run(&["backdoor", "--cnf", &c, "-k", "2"])), "1 2\n1 3\n2 3\n");
    assert_eq!(run(&["backdoor", "--cnf", &c, "-k", "4", "--exists"]).status.code(), Some(1));
}

#[test]
fn classify_reports_flags() {
    let d = TempDir::new().unwrap();
    let l = file(&d, "lang", "relation IMP 2 { 00 01 11 }\n");
    let o = run(&["classify", "--language", &l]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("IMP: zero_valid=yes one_valid=yes horn=yes dual_horn=yes bijunctive=yes affine=no"));
    assert!(out.contains("language: "));
}

#[test]
fn profile_writes_json_and_csv() {
    let d = TempDir::new().unwrap();
    let json = d.path().join("p.json");
    let csv = d.path().join("csv");
    let o = run(&[
        "profile", "vc", "-k", "3", "--sizes", "20,40", "--seed", "7", "--repeats", "2",
        "--json", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    let p = &v["runs"][0]["profile"];
    assert_eq!(p["gaps_ns"].as_array().unwrap().len() + 1, p["count"].as_u64().unwrap() as usize);
    assert_eq!(v["report"]["records"].as_array().unwrap().len(), 2);
    assert_eq!(fs::read_dir(Path::new(&csv)).unwrap().count(), 2);
}

#[test]
fn input_errors_exit_2_with_line_numbers() {
    let d = TempDir::new().unwrap();
    let cases = [
        ("backdoor", "--cnf", "p cnf 2 1\n1 -1 0\n", "line 2"),
        ("backdoor", "--cnf", "p cnf 1 1\n2 0\n", "line 2"),
        ("backdoor", "--cnf", "p cnf 1 2\n1 0\n", "line 2"),
        ("vc", "--graph", "e 0 0", "line 1"),
        ("vc", "--graph", "p graph 3 2\ne 0 1\n", "line 2"),
        ("maxones", "--formula", "nvars 2\nrelation OR 2 { 011 }\n", "line 2"),
        ("maxones", "--formula", "nvars 2\nconstraint AND 0 1\n", "line 2"),
    ];
    for (i, (cmd, flag, text, line)) in cases.iter().enumerate() {
        let f = file(&d, &format!("in{i}"), text);
        let o = run(&[cmd, flag, &f, "-k", "1"]);
        assert_eq!(o.status.code(), Some(2), "{text:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(line), "{text:?}: {err}");
    }
    assert_eq!(run(&["vc", "--graph", "/nonexistent/file", "-k", "1"]).status.code(), Some(2));
}
