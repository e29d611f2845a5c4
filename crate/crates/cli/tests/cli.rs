use std::process::{Command, Output};

use cyldiag::golden::golden;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyldiag")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("single JSON document")
}

fn count(args: &[&str]) -> u64 {
    let mut full = vec!["enumerate", "--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    json(&o)["count"].as_u64().unwrap()
}

#[test]
fn enumerate_counts() {
    assert_eq!(count(&["--stratum", "H(2,2)", "--cylinders", "4", "--component", "hyp"]), 2);
    assert_eq!(count(&["--stratum", "H(2,2)^hyp", "--cylinders", "4"]), 2);
    assert_eq!(count(&["--genus", "2", "--cylinders", "2"]), 3);
    assert_eq!(count(&["--stratum", "H(3,1)", "--cylinders", "5"]), 0);
    assert_eq!(count(&["--stratum", "H(2)", "--cylinders", "2", "--strategy", "both"]), 1);
}

#[test]
fn enumerate_text_and_filters() {
    let o = run(&[
        "enumerate", "--stratum", "H(2,2)", "--cylinders", "3",
        "--filter", "case=3.I,no-semisimple", "--filter", "no-selfadjacent",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("count: 1\n"), "{text}");
    assert!(text.contains("H(2,2)^odd"), "{text}");
}

#[test]
fn enumerate_writes_atlas_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["enumerate", "--stratum", "H(4)", "--cylinders", "2", "--out", out, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let files = doc["files"].as_array().unwrap();
    for f in files {
        assert!(std::path::Path::new(f.as_str().unwrap()).is_file());
    }
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(files[1].as_str().unwrap()).unwrap()).unwrap();
    assert_eq!(saved["entries"].as_array().unwrap().len() as u64, doc["count"].as_u64().unwrap());
    // same query, same file name
    let again = json(&run(&["enumerate", "--stratum", "H(4)", "--cylinders", "2", "--out", out, "--json"]));
    assert_eq!(again["files"], doc["files"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["enumerate", "--cylinders", "2"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--stratum", "H(2)"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--genus", "2", "--cylinders", "1", "--strategy", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["render", "(1)-(1)", "--format", "png"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn classify_rejects_bad_diagrams() {
    let o = run(&["classify", "(1,2)-(1,3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("label 2 missing on top side"));
    assert!(o.stdout.is_empty());
}

#[test]
fn classify_exceptional() {
    let text = golden("exceptional").to_string();
    let o = run(&["classify", &text]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["stratum"], "H(2,2)");
    assert_eq!(r["component"], "odd");
    assert_eq!(r["degeneration_case"], "3.I");
    assert_eq!(r["core_rank"], 3);
}

#[test]
fn classify_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ha.txt");
    std::fs::write(&path, format!("{}\n", golden("4.I.HA"))).unwrap();
    let o = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["degeneration_case"], "4.I");
    let rel: Vec<Vec<i64>> = serde_json::from_value(r["relations"].clone()).unwrap();
    assert_eq!(rel.len(), 1);
    let r0 = &rel[0];
    // c1 - c2 + c3 - c4 = 0 up to sign
    assert!(r0 == &[1, -1, 1, -1] || r0 == &[-1, 1, -1, 1], "{r0:?}");
}

#[test]
fn render_dot() {
    let text = golden("exceptional").to_string();
    let o = run(&["render", &text, "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    let vertices: std::collections::BTreeSet<&str> = dot
        .lines()
        .filter(|l| l.contains("->"))
        .flat_map(|l| l.split(|c: char| !c.is_alphanumeric()).filter(|w| w.starts_with('C') && w.len() > 1))
        .collect();
    assert_eq!(edges, 6);
    assert_eq!(vertices.len(), 3);

    // DOT goes back through the parser to the same diagram
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    std::fs::write(&path, &dot).unwrap();
    let r = json(&run(&["classify", path.to_str().unwrap()]));
    assert_eq!(r["degeneration_case"], "3.I");
}

#[test]
fn render_oa_star() {
    let dot = stdout(&run(&["render", &golden("4.I.OA").to_string(), "--format", "dot"]));
    let mut ends: std::collections::BTreeMap<String, usize> = Default::default();
    for l in dot.lines().filter(|l| l.contains("->")) {
        let (a, b) = l.split_once("->").unwrap();
        for v in [a, b] {
            let v = v.trim().split(|c: char| c == ' ' || c == '[' || c == ';').next().unwrap().to_string();
            *ends.entry(v).or_default() += 1;
        }
    }
    let mut val: Vec<usize> = ends.values().copied().collect();
    val.sort_unstable();
    assert_eq!(val, vec![2, 2, 2, 6]);
}

#[test]
fn render_svg_torus() {
    let o = run(&["render", "(1)-(1)", "--svg"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.trim_start().starts_with("<svg"));
    assert_eq!(svg.matches("<rect").count(), 1);
}

#[test]
fn verify_paper_passes_and_catches_fault() {
    let o = run(&["verify-paper", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = json(&o);
    assert_eq!(doc["passed"], 10);
    assert_eq!(doc["total"], 10);
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let bad = run(&["verify-paper", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("check 3"), "{err}");
    assert!(stdout(&bad).contains("FAIL"));
}
