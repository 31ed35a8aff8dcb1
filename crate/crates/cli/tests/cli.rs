use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ccgraph(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ccgraph"))
        .args(args)
        .env_remove("CCGRAPH_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend(args);
    let o = ccgraph(&full, "");
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn heawood_witness_reverifies() {
    let h = gen(&["heawood"]);
    let o = ccgraph(&["--json", "check", "cycle-conformal", "--witness"], &h);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], Value::Bool(false));
    let cycle: Vec<String> =
        report["witness"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap().to_string()).collect();
    let o = ccgraph(&["check", "conformal", "--cycle", &cycle.join(",")], &h);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn complete_bipartite_is_cycle_conformal() {
    let k = gen(&["k", "3", "3"]);
    for method in ["auto", "brute", "cubic"] {
        assert_eq!(ccgraph(&["check", "cc", "--method", method], &k).status.code(), Some(0));
    }
}

#[test]
fn glued_decomposes_into_two_k44() {
    let g = gen(&["glued-kll", "4"]);
    let o = ccgraph(&["decompose"], &g);
    assert!(o.status.success());
    let k44 = gen(&["k", "4", "4"]);
    let k44_leaves = stdout(&ccgraph(&["decompose"], &k44));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.ends_with("brace")));
    // each leaf re-decomposes to itself and is K4,4 up to isomorphism
    for l in &lines {
        let g6 = l.split_whitespace().next().unwrap();
        assert_eq!(ccgraph(&["check", "brace"], g6).status.code(), Some(0));
        assert_eq!(stdout(&ccgraph(&["count", "pm"], g6)).trim(), "24");
    }
    assert!(k44_leaves.ends_with("brace\n"));
}

#[test]
fn malformed_graph6_reports_position() {
    let o = ccgraph(&["check", "planar"], "E?x_!\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 4"));
    assert_eq!(ccgraph(&["check", "bogus"], "").status.code(), Some(2));
    assert_eq!(ccgraph(&["gen", "nonsense"], "").status.code(), Some(2));
}

#[test]
fn convert_round_trips() {
    let g = gen(&["tight-cut-example"]);
    for to in ["edges", "dot"] {
        let other = stdout(&ccgraph(&["convert", "--to", to], &g));
        assert_eq!(stdout(&ccgraph(&["convert", "--to", "g6"], &other)), g);
    }
}

#[test]
fn file_input_and_format_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m5.g6");
    std::fs::write(&path, gen(&["moebius", "5"])).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ccgraph(&["check", "cycle-conformal", p], "").status.code(), Some(1));
    assert_eq!(ccgraph(&["check", "matching-covered", p], "").status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_ccgraph"))
        .args(["gen", "cycle", "4"])
        .env("CCGRAPH_FORMAT", "edges")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("4 4\n"));
}

#[test]
fn checks_cover_the_fixtures() {
    let c6 = gen(&["cycle", "6"]);
    assert_eq!(ccgraph(&["check", "k-extendable", "--k", "2"], &c6).status.code(), Some(1));
    assert_eq!(ccgraph(&["check", "k-extendable", "--k", "0"], &c6).status.code(), Some(2));
    let ex = gen(&["tight-cut-example"]);
    assert_eq!(ccgraph(&["check", "tight", "--shore", "0,1,4"], &ex).status.code(), Some(0));
    assert_eq!(ccgraph(&["check", "brace"], &ex).status.code(), Some(1));
    assert_eq!(ccgraph(&["check", "pfaffian"], &gen(&["heawood"])).status.code(), Some(0));
    assert_eq!(ccgraph(&["check", "pfaffian"], &gen(&["k", "3", "3"])).status.code(), Some(1));
    assert_eq!(ccgraph(&["check", "brick"], &gen(&["petersen"])).status.code(), Some(0));
    assert_eq!(ccgraph(&["check", "planar"], &gen(&["petersen"])).status.code(), Some(1));
    let k5 = gen(&["complete", "5"]);
    assert_eq!(ccgraph(&["check", "factor-critical"], &k5).status.code(), Some(0));
    assert_eq!(ccgraph(&["check", "odd-cycle-conformal"], &k5).status.code(), Some(0));
    assert_eq!(ccgraph(&["check", "cc", "--odd"], &k5).status.code(), Some(0));
}

#[test]
fn planar_trace_is_json() {
    let ladder = gen(&["ladder", "4"]);
    let o = ccgraph(&["check", "cc", "--method", "kuske", "--trace"], &ladder);
    assert_eq!(o.status.code(), Some(0));
    let trace_line = stdout(&o).lines().find(|l| l.starts_with('{')).unwrap().to_string();
    let trace: Value = serde_json::from_str(&trace_line).unwrap();
    assert!(trace["steps"].as_array().is_some());
}

#[test]
fn census_commands() {
    let o = ccgraph(&["census", "--n", "6", "--bipartite", "--regular", "3"], "");
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = ccgraph(&["--json", "census", "--n", "8", "--bipartite", "--report", "braces", "--jobs", "2"], "");
    assert!(o.status.success());
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(report["cycle_conformal_braces"].as_array().unwrap().len(), 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.g6");
    std::fs::write(&path, stdout(&ccgraph(&["census", "--n", "12", "--bipartite", "--regular", "3"], ""))).unwrap();
    let o = ccgraph(
        &[
            "census",
            "--n",
            "12",
            "--bipartite",
            "--regular",
            "3",
            "--from",
            path.to_str().unwrap(),
            "--report",
            "recognizers",
        ],
        "",
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("mismatches: 0"));
    assert_eq!(ccgraph(&["census", "--n", "20", "--bipartite"], "").status.code(), Some(2));
}
