use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    report: Value,
}

fn occult(args: &[&str]) -> Run {
    occult_env(args, &[])
}

fn occult_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_occult"));
    cmd.args(args).env_remove("OCCULT_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().expect("exit code"), report }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Generates into `dir/name.{graph,witness}.json`.
fn generate(dir: &TempDir, name: &str, args: &[&str]) -> (PathBuf, PathBuf) {
    let prefix = dir.path().join(name);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", s(&prefix)]);
    let r = occult(&all);
    assert_eq!(r.code, 0, "{args:?}: {}", r.report);
    (dir.path().join(format!("{name}.graph.json")), dir.path().join(format!("{name}.witness.json")))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn occultation_four_has_21_vertices() {
    let r = occult(&["generate", "occultation", "--s", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["n"], 21);
    assert_eq!(r.report["graph"]["n"], 21);
    assert_eq!(r.report["witness"]["S"].as_array().unwrap().len(), 4);
}

#[test]
fn wall_and_complete() {
    assert_eq!(occult(&["generate", "wall", "--t", "3"]).report["n"], 16);
    assert_eq!(occult(&["generate", "complete-bipartite", "--a", "3", "--b", "3"]).report["m"], 9);
}

#[test]
fn same_seed_same_bytes() {
    let dir = TempDir::new().unwrap();
    let args = ["full-occultation", "--s", "3", "--o", "1", "--length", "3", "--extra", "1", "--seed", "0x2a"];
    let (g1, w1) = generate(&dir, "a", &args);
    let (g2, w2) = generate(&dir, "b", &args);
    assert_eq!(std::fs::read(g1).unwrap(), std::fs::read(g2).unwrap());
    assert_eq!(std::fs::read(w1).unwrap(), std::fs::read(w2).unwrap());
    let (g3, _) = generate(&dir, "c", &["full-occultation", "--s", "3", "--o", "1", "--length", "3", "--extra", "1", "--seed", "42"]);
    assert_eq!(std::fs::read(g3).unwrap(), std::fs::read(dir.path().join("a.graph.json")).unwrap());
}

#[test]
fn generate_then_check_round_trips() {
    let dir = TempDir::new().unwrap();
    let grid: &[(&[&str], &[&[&str]])] = &[
        (&["occultation", "--s", "1"], &[&["full-occultation", "--o", "1"]]),
        (&["occultation", "--s", "3"], &[&["full-occultation", "--o", "1"], &["interrupted"], &["ample"]]),
        (&["full-occultation", "--s", "3", "--o", "2", "--extra", "1", "--seed", "5"], &[&["full-occultation", "--o", "2"]]),
        (&["ample-interrupted", "--s", "3", "--d", "2", "--seed", "1"], &[&["ample", "--d", "2"], &["interrupted"]]),
        (&["syzygy", "--a", "4", "--gaps", "2,3"], &[&["syzygy"]]),
        (&["gemini", "--g", "3", "--o", "2"], &[&["gemini"]]),
        (&["constellation", "--s", "3", "--l", "2"], &[&["constellation", "--plain"]]),
        (&["meager", "--s", "5", "--d", "2", "--seed", "9"], &[&["asterism"]]),
        (&["figure5"], &[&["asterism"]]),
    ];
    for (i, (family, checks)) in grid.iter().enumerate() {
        let (g, w) = generate(&dir, &format!("x{i}"), family);
        for check in *checks {
            let mut args = vec!["check", check[0], "--graph", s(&g), "--witness", s(&w)];
            args.extend_from_slice(&check[1..]);
            let r = occult(&args);
            assert_eq!(r.code, 0, "{family:?} {check:?}: {}", r.report);
            assert_eq!(r.report["holds"], true);
        }
    }
}

#[test]
fn failed_check_exits_one_with_violation() {
    let dir = TempDir::new().unwrap();
    let (g, w) = generate(&dir, "o", &["occultation", "--s", "3"]);
    let r = occult(&["check", "syzygy", "--graph", s(&g), "--witness", s(&w)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["holds"], false);
    let bad = write(&dir, "bad.json", r#"{"S":[0,1],"L":[0,3,4]}"#);
    let r = occult(&["check", "asterism", "--graph", s(&g), "--witness", s(&bad)]);
    assert_eq!(r.code, 1);
    assert!(r.report["violation"]["clause"].is_string());
}

#[test]
fn two_squares_are_not_perforated() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.json", r#"{"n":8,"edges":[[0,1],[1,2],[2,3],[3,0],[4,5],[5,6],[6,7],[7,4]]}"#);
    let r = occult(&["check", "perforated", "--graph", s(&g), "--c", "2", "--o", "1"]);
    assert_eq!(r.code, 1);
    let witness = &r.report["verdict"]["witness"];
    assert_eq!(witness.as_array().unwrap().len(), 2);
    let cycles = write(&dir, "cycles.json", &witness.to_string());
    assert_eq!(occult(&["check", "packing", "--graph", s(&g), "--witness", s(&cycles), "--c", "2", "--o", "1"]).code, 0);
    assert_eq!(occult(&["check", "packing", "--graph", s(&g), "--witness", s(&cycles), "--c", "2", "--o", "3"]).code, 1);
}

#[test]
fn budgets() {
    let dir = TempDir::new().unwrap();
    let (g, _) = generate(&dir, "o", &["occultation", "--s", "3"]);
    let base = ["check", "perforated", "--graph", s(&g), "--c", "2", "--o", "1"];
    assert_eq!(occult(&base).code, 0);
    let mut tiny = base.to_vec();
    tiny.extend(["--budget", "1"]);
    let r = occult(&tiny);
    assert_eq!(r.code, 2);
    assert_eq!(r.report["verdict"]["verdict"], "indeterminate");
    assert_eq!(occult_env(&base, &[("OCCULT_BUDGET", "1")]).code, 2);
    let mut big = base.to_vec();
    big.extend(["--budget", "1000000"]);
    assert_eq!(occult_env(&big, &[("OCCULT_BUDGET", "1")]).code, 0);
}

#[test]
fn config_file_with_command_line_override() {
    let dir = TempDir::new().unwrap();
    let (g, _) = generate(&dir, "o", &["occultation", "--s", "3"]);
    let cfg = write(&dir, "occult.toml", "budget = 1\nc = 2\no = 1\nthreads = 2\nseed = \"0x10\"\n");
    let r = occult(&["--config", s(&cfg), "check", "perforated", "--graph", s(&g)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.report["c"], 2);
    let r = occult(&["--config", s(&cfg), "check", "perforated", "--graph", s(&g), "--budget", "100000"]);
    assert_eq!(r.code, 0);
    let cfg = write(&dir, "seed.toml", "s = 3\nseed = \"0x10\"\n");
    assert_eq!(occult(&["--config", s(&cfg), "generate", "ample-interrupted"]).report["seed"], 16);
    let bad = write(&dir, "bad.toml", "nonsense = 1\n");
    assert_eq!(occult(&["--config", s(&bad), "generate", "wall", "--t", "2"]).code, 3);
}

#[test]
fn extract_occultation_end_to_end() {
    let dir = TempDir::new().unwrap();
    let (g, w) = generate(&dir, "a", &["ample-interrupted", "--s", "3", "--d", "2", "--seed", "7"]);
    let r = occult(&["extract", "occultation", "--graph", s(&g), "--witness", s(&w), "--c", "1", "--o", "1", "--s", "3"]);
    assert_eq!(r.code, 0, "{}", r.report);
    let outcome = &r.report["result"]["outcome"];
    assert_eq!(outcome["outcome"], "full-occultation");
    assert!(r.report["result"]["trace"].as_array().is_some_and(|t| !t.is_empty()));
    let out = write(&dir, "out.json", &outcome["witness"].to_string());
    assert_eq!(occult(&["check", "full-occultation", "--graph", s(&g), "--witness", s(&out), "--o", "1"]).code, 0);
}

#[test]
fn extract_syzygy_or_constellation_at_the_bound() {
    let dir = TempDir::new().unwrap();
    // a = 2, l = 2, s = 1, d = 1 needs 2 * (1 + 1) = 4 vertices
    for seed in 0..8 {
        let (g, w) = generate(&dir, &format!("m{seed}"), &["meager", "--s", "4", "--d", "1", "--length", "14", "--seed", &seed.to_string()]);
        let r = occult(&["extract", "syzygy-or-constellation", "--graph", s(&g), "--witness", s(&w), "--a", "2", "--l", "2", "--s", "1", "--d", "1"]);
        assert_eq!(r.code, 0, "seed {seed}: {}", r.report);
        assert_ne!(r.report["result"]["outcome"]["outcome"], "insufficient");
    }
}

#[test]
fn extract_gemini_cycles() {
    let dir = TempDir::new().unwrap();
    let (g, w) = generate(&dir, "g", &["gemini", "--g", "4", "--o", "1", "--seed", "3"]);
    let r = occult(&["extract", "gemini-cycles", "--graph", s(&g), "--witness", s(&w), "--c", "2", "--o", "1"]);
    assert_eq!(r.code, 0);
    let cycles = r.report["result"]["cycles"].as_array().unwrap();
    assert_eq!(cycles.len(), 2);
    assert!(cycles.iter().all(|c| c.as_array().unwrap().len() >= 8));
    let r = occult(&["extract", "gemini-cycles", "--graph", s(&g), "--witness", s(&w), "--c", "3", "--o", "1"]);
    assert_eq!(r.code, 3);
    assert!(r.report["error"]["precondition"].is_string());
}

#[test]
fn extract_matching_or_cover() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "star.json", r#"{"n":4,"edges":[[0,1],[0,2],[0,3]]}"#);
    let r = occult(&["extract", "matching-or-cover", "--graph", s(&g), "--c", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["kind"], "vertex-cover");
}

#[test]
fn treewidth_values() {
    let dir = TempDir::new().unwrap();
    let (o4, _) = generate(&dir, "o4", &["occultation", "--s", "4"]);
    let r = occult(&["treewidth", "--graph", s(&o4)]);
    assert_eq!(r.code, 0);
    assert!(r.report["width"].as_u64().unwrap() >= 3);
    let (w3, _) = generate(&dir, "w3", &["wall", "--t", "3"]);
    let td = dir.path().join("w3.td");
    let r = occult(&["treewidth", "--graph", s(&w3), "--td", s(&td)]);
    assert_eq!(r.report["width"], 3);
    let r = occult(&["check", "decomposition", "--graph", s(&w3), "--witness", s(&td)]);
    assert_eq!((r.code, r.report["width"].as_u64()), (0, Some(3)));
    let tdj = dir.path().join("w3.td.json");
    occult(&["treewidth", "--graph", s(&w3), "--td", s(&tdj), "--format", "json"]);
    assert_eq!(occult(&["check", "decomposition", "--graph", s(&w3), "--witness", s(&tdj)]).code, 0);
    for n in [0, 1] {
        let g = write(&dir, &format!("e{n}.json"), &format!(r#"{{"n":{n},"edges":[]}}"#));
        assert_eq!(occult(&["treewidth", "--graph", s(&g)]).report["width"], 0);
    }
}

#[test]
fn treewidth_budget_and_threads() {
    let dir = TempDir::new().unwrap();
    let (w, _) = generate(&dir, "w5", &["wall", "--t", "5"]);
    let r = occult(&["treewidth", "--graph", s(&w), "--budget", "3"]);
    assert_eq!(r.code, 2);
    assert!(r.report["lower"].as_u64() <= r.report["upper"].as_u64());
    let one = occult(&["--threads", "1", "treewidth", "--graph", s(&w)]);
    let four = occult(&["--threads", "4", "treewidth", "--graph", s(&w)]);
    assert_eq!(one.report["width"], 5);
    assert_eq!(one.report["decomposition"], four.report["decomposition"]);
}

#[test]
fn broken_decomposition_names_the_axiom() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p.json", r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
    let td = write(&dir, "p.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
    let r = occult(&["check", "decomposition", "--graph", s(&g), "--witness", s(&td)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["violation"]["axiom"], "edge-cover");
}

#[test]
fn usage_errors() {
    assert_eq!(occult(&["generate", "nonsense"]).code, 3);
    assert_eq!(occult(&["generate", "wall"]).code, 3);
    assert_eq!(occult(&["generate", "wall", "--t", "3", "--seed", "0xzz"]).code, 3);
    assert_eq!(occult(&["check", "perforated", "--graph", "/nonexistent/g.json"]).code, 3);
    assert_eq!(occult(&["--help"]).code, 0);
    assert_eq!(occult(&["--version"]).code, 0);
    assert_eq!(occult(&[]).code, 3);
}

#[test]
fn dot_output() {
    let dir = TempDir::new().unwrap();
    let (g, _) = generate(&dir, "k", &["complete", "--t", "3"]);
    let r = occult(&["dot", "--graph", s(&g)]);
    assert_eq!(r.report["dot"], "graph G {\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n");
    let out = dir.path().join("k.dot");
    assert_eq!(occult(&["dot", "--graph", s(&g), "--out", s(&out)]).code, 0);
    assert!(std::fs::read_to_string(out).unwrap().starts_with("graph G {"));
}
