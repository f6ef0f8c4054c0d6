use std::fs;
use std::path::Path;

use psw::cli::{run, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn psw(args: &[&str]) -> i32 {
    run(std::iter::once("psw").chain(args.iter().copied()))
}

fn path(dir: &Path, f: &str) -> String {
    dir.join(f).display().to_string()
}

fn write_depth_layering(dir: &Path, h: usize) -> String {
    let layers: Vec<Vec<usize>> = (0..=h).map(|d| ((1 << d) - 1..(1 << (d + 1)) - 1).collect()).collect();
    let p = path(dir, "lay.json");
    fs::write(&p, format!(r#"{{ "layers": {layers:?} }}"#)).unwrap();
    p
}

#[test]
fn singletons_over_gh_are_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(psw(&["generate", "gh", "--height", "4", "-o", &path(d, "g.el")]), EXIT_OK);
    let tp = path(d, "tp.json");
    let parts: Vec<String> = (0..31).map(|v| format!(r#""{v}": [{v}]"#)).collect();
    fs::write(&tp, format!(r#"{{ "host": "g.el", "parts": {{ {} }} }}"#, parts.join(", "))).unwrap();
    let lay = write_depth_layering(d, 4);
    let cert = path(d, "cert.json");
    let code = psw(&["witness", "--graph", &path(d, "g.el"), "--meta", &path(d, "g.json"), "--tree-partition", &tp, "--layering", &lay, "-o", &cert]);
    assert_eq!(code, EXIT_INFEASIBLE);
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"branch\": \"infeasible\""));
    assert_eq!(psw(&["audit", &cert]), EXIT_OK);
}

#[test]
fn validation_failures_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(psw(&["generate", "gh", "--height", "2", "-o", &path(d, "g.el")]), EXIT_OK);
    // Root and the two leaves under vertex 1 against the rest, over two
    // isolated host vertices: the edge 0-2 crosses a non-edge.
    let tp = path(d, "tp.json");
    fs::write(&tp, r#"{ "host": { "n": 2, "edges": [] }, "parts": { "0": [0, 1, 3, 4], "1": [2, 5, 6] } }"#).unwrap();
    assert_eq!(psw(&["validate", "partition", "--graph", &path(d, "g.el"), "--partition", &tp]), EXIT_INVALID);
    fs::write(&tp, r#"{ "host": { "n": 2, "edges": [[0, 1]] }, "parts": { "0": [0, 1, 3, 4], "1": [2, 5, 6] } }"#).unwrap();
    assert_eq!(psw(&["validate", "partition", "--graph", &path(d, "g.el"), "--partition", &tp, "--tree"]), EXIT_OK);

    let lay = path(d, "lay.json");
    fs::write(&lay, r#"{ "layers": [[0], [1, 2], [], [3, 4, 5, 6]] }"#).unwrap();
    assert_eq!(psw(&["validate", "layering", "--graph", &path(d, "g.el"), "--layering", &lay]), EXIT_INVALID);
    let lay = write_depth_layering(d, 2);
    assert_eq!(psw(&["validate", "layering", "--graph", &path(d, "g.el"), "--layering", &lay]), EXIT_OK);
    let emb = |c: &str| psw(&["validate", "embedding", "--graph", &path(d, "g.el"), "--partition", &tp, "--layering", &lay, "--c", c]);
    assert_eq!(emb("1"), EXIT_INVALID);
    assert_eq!(emb("2"), EXIT_OK);

    fs::write(&tp, r#"{ "host": { "n": 1, "edges": [] }, "parts": { "0": [0, 1] } }"#).unwrap();
    assert_eq!(psw(&["validate", "partition", "--graph", &path(d, "g.el"), "--partition", &tp]), EXIT_INVALID);
}

#[test]
fn usage_errors_exit_2_and_leave_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(psw(&["generate", "gh", "--height", "30", "--budget-vertices", "1000", "-o", &path(d, "g.el")]), EXIT_USAGE);
    assert!(fs::read_dir(d).unwrap().next().is_none());
    assert_eq!(psw(&["validate", "layering", "--graph", &path(d, "missing.el"), "--layering", "x"]), EXIT_USAGE);
    assert_eq!(psw(&["generate", "grid", "--x", "3", "--y", "2", "--divide", "a,b", "-o", &path(d, "g.el")]), EXIT_USAGE);
    assert_eq!(psw(&["suite", "paper-checks", "--only", "11"]), EXIT_USAGE);
    assert_eq!(psw(&["check", "lemma5", "--exhaustive", "--samples", "3"]), EXIT_USAGE);
}

#[test]
fn generators_products_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(psw(&["generate", "grid", "--x", "3", "--y", "2", "--divide", "1,0,2,0", "-o", &path(d, "grid.el")]), EXIT_OK);
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(path(d, "grid.json")).unwrap()).unwrap();
    assert_eq!(meta["divisions"], serde_json::json!([1, 0, 2, 0]));
    assert_eq!(meta["roles"].as_array().unwrap().len(), 9);
    assert_eq!(meta["roles"][6]["role"], "subdivision");

    fs::write(path(d, "k2.el"), "2 1\n0 1\n").unwrap();
    assert_eq!(psw(&["product", "strong", &path(d, "k2.el"), &path(d, "k2.el"), "-o", &path(d, "k4.el")]), EXIT_OK);
    assert_eq!(fs::read_to_string(path(d, "k4.el")).unwrap(), "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert_eq!(psw(&["check", "tw2", &path(d, "k4.el")]), EXIT_INVALID);
    assert_eq!(psw(&["check", "outerplanar", &path(d, "k4.el")]), EXIT_INVALID);
    assert_eq!(psw(&["check", "tw2", &path(d, "grid.el")]), EXIT_OK);

    assert_eq!(psw(&["export", "dot", &path(d, "k2.el"), "-o", &path(d, "k2.dot")]), EXIT_OK);
    assert!(fs::read_to_string(path(d, "k2.dot")).unwrap().contains("0 -- 1;"));

    assert_eq!(psw(&["oracle", "min-c", &path(d, "k4.el"), "--tree-max", "4", "--path-max", "3", "-o", &path(d, "minc.json")]), EXIT_OK);
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(path(d, "minc.json")).unwrap()).unwrap();
    assert_eq!(r["c"], 1);
}

#[test]
fn sweeps_and_suite_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let sweep = |out: &str| psw(&["oracle", "sweep", "--lemma", "7", "--samples", "300", "--seed", "5", "-o", &path(d, out)]);
    assert_eq!(sweep("a.json"), EXIT_OK);
    assert_eq!(sweep("b.json"), EXIT_OK);
    assert_eq!(fs::read(path(d, "a.json")).unwrap(), fs::read(path(d, "b.json")).unwrap());

    let suite = |out: &str| psw(&["suite", "paper-checks", "--only", "2,5", "--seed", "7", "-o", &path(d, out)]);
    assert_eq!(suite("s1.json"), EXIT_OK);
    assert_eq!(suite("s2.json"), EXIT_OK);
    assert_eq!(fs::read(path(d, "s1.json")).unwrap(), fs::read(path(d, "s2.json")).unwrap());
    assert!(Path::new(&path(d, "s1.timings.json")).exists());

    assert_eq!(psw(&["check", "lemma5", "--height", "3", "--exhaustive", "-o", &path(d, "l5.csv")]), EXIT_OK);
    let csv = fs::read_to_string(path(d, "l5.csv")).unwrap();
    assert!(csv.starts_with("size,observed,bound\n"));
    assert_eq!(psw(&["check", "lemma6", "--height", "4", "--samples", "200", "-o", &path(d, "l6.csv")]), EXIT_OK);
    assert_eq!(psw(&["check", "grow", "--height", "8", "--samples", "100", "-o", &path(d, "grow.csv")]), EXIT_OK);
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = path(d, "psw.conf");
    fs::write(&cfg, "# small budget\nbudget_vertices = 100\nseed = 9\n").unwrap();
    assert_eq!(psw(&["--config", &cfg, "generate", "gh", "--height", "7", "-o", &path(d, "g.el")]), EXIT_USAGE);
    assert_eq!(psw(&["--config", &cfg, "--budget-vertices", "1000", "generate", "gh", "--height", "7", "-o", &path(d, "g.el")]), EXIT_OK);
    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(psw(&["--config", &cfg, "generate", "gh", "--height", "2", "-o", &path(d, "g.el")]), EXIT_USAGE);
}

#[test]
fn refuted_claim_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(psw(&["generate", "gh", "--height", "14", "-o", &path(d, "g.el")]), EXIT_OK);
    let all: Vec<usize> = (0..(1 << 15) - 1).collect();
    let tp = path(d, "tp.json");
    fs::write(&tp, format!(r#"{{ "host": {{ "n": 1, "edges": [] }}, "parts": {{ "0": {all:?} }} }}"#)).unwrap();
    let lay = write_depth_layering(d, 14);
    let cert = path(d, "cert.json");
    let code = psw(&["witness", "--graph", &path(d, "g.el"), "--meta", &path(d, "g.json"), "--tree-partition", &tp, "--layering", &lay, "-o", &cert]);
    assert_eq!(code, EXIT_OK);
    let claim = |c: &str| psw(&["audit", &cert, "--claim-c", c, "--claim-delta", "3", "--claim-treewidth", "1"]);
    assert_eq!(claim("1"), EXIT_INVALID);
    assert_eq!(claim("1000"), EXIT_OK);
}
