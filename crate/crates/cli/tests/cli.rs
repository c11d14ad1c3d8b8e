use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn edsi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edsi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn running_pair(f: &Files) -> (String, String) {
    let a = f.put("t1.eds", "{AC,A,TGCT}{,CA}\n");
    let b = f.put("t2.eds", "{T,}{GCA,AC}\n");
    (a.display().to_string(), b.display().to_string())
}

#[test]
fn intersect_yes_and_no() {
    let f = Files::new();
    let (a, b) = running_pair(&f);
    let o = edsi(&["intersect", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "YES\n");
    let x = f.put("x.eds", "{XY}{Z}").display().to_string();
    let o = edsi(&["intersect", &a, &x]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NO\n");
}

#[test]
fn witness_and_count() {
    let f = Files::new();
    let (a, b) = running_pair(&f);
    assert_eq!(stdout(&edsi(&["intersect", "--shortest", &a, &b])), "YES\nAC\n");
    assert_eq!(stdout(&edsi(&["intersect", "--count", &a, &b])), "YES\n1\n");
}

#[test]
fn big_counts_are_exact_in_json() {
    let f = Files::new();
    let seg = "{A,A,A,A,A,A,A,A,A,A}".repeat(12);
    let a = f.put("big.eds", &seg).display().to_string();
    let o = edsi(&["--format", "json", "intersect", "--count", &a, &a]);
    let line = stdout(&o);
    assert!(line.contains(&format!("\"count\":1{}", "0".repeat(24))), "{line}");
}

#[test]
fn matching_statistics() {
    let f = Files::new();
    let (a, b) = running_pair(&f);
    let o = edsi(&["ms", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 2\n");
}

#[test]
fn json_lines_schema() {
    let f = Files::new();
    let (a, b) = running_pair(&f);
    let o = edsi(&["--format", "json", "intersect", "--witness", &a, &b]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["task"], "intersect");
    assert_eq!(v["answer"], true);
    assert_eq!(v["witness"], "AC");
    assert_eq!(v["length"], 2);
    let o = edsi(&["--format", "json", "edsm", &b, &a, "--report-ends"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["task"], "edsm");
    assert!(v["segments"]["ends"].is_array());
}

#[test]
fn approximate() {
    let f = Files::new();
    let a = f.put("a.eds", "{ab}").display().to_string();
    let b = f.put("b.eds", "{ac}").display().to_string();
    for k in [None, Some("1")] {
        let mut args = vec!["approx", &a, &b, "--metric", "edit"];
        if let Some(k) = k {
            args.extend(["-k", k]);
        }
        let o = edsi(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "YES\n1\nab\tac\n");
    }
    let c = f.put("c.eds", "{abc}").display().to_string();
    let o = edsi(&["approx", &a, &c, "--metric", "hamming"]);
    assert_eq!(o.status.code(), Some(1));
    let o = edsi(&["approx", &a, &c, "--metric", "edit", "--match"]);
    assert_eq!(stdout(&o), "YES\n0\nab\tab\nends: 0\n");
}

#[test]
fn unary_and_acronym() {
    let f = Files::new();
    let a = f.put("a.cu", "1,2\n0,3\n").display().to_string();
    let b = f.put("b.cu", "4\n").display().to_string();
    assert_eq!(stdout(&edsi(&["unary", &a, &b])), "YES\n4\n");
    let d = f.put("d.txt", "faq\nfq\nxyz\n").display().to_string();
    let o = edsi(&["acronym", &d, "--words", "frequently", "asked", "questions"]);
    assert_eq!(stdout(&o), "YES\nfaq\nfq\n");
    let o = edsi(&["acronym", &d, "--words", "frequently", "asked", "questions", "--minlens", "1,1,1"]);
    assert_eq!(stdout(&o), "YES\nfaq\n");
}

#[test]
fn errors_and_budget() {
    let f = Files::new();
    let bad = f.put("bad.eds", "{A").display().to_string();
    let o = edsi(&["ms", &bad, &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(edsi(&["ms"]).status.code(), Some(2));
    let (a, b) = running_pair(&f);
    let o = edsi(&["--budget", "5", "lcseq", &a, &b]);
    assert_eq!(o.status.code(), Some(3));
    let o = edsi(&["approx", &a, &b, "--metric", "edit", "-k", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generators_are_repeatable() {
    let one = stdout(&edsi(&["gen", "random", "--seed", "9", "--count", "3"]));
    assert_eq!(one, stdout(&edsi(&["gen", "random", "--seed", "9", "--count", "3"])));
    assert_eq!(one.lines().count(), 3);
    let ov = stdout(&edsi(&["gen", "ov", "--seed", "1", "--k", "3", "--d", "2"]));
    assert_eq!(ov.lines().count(), 2);
    assert_eq!(edsi(&["gen", "random"]).status.code(), Some(2));
}
