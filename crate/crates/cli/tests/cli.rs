//! End-to-end checks of the `contentmax` binary: output contents, exit
//! codes, file round trips, and the thread cap.

use std::path::Path;
use std::process::{Command, Output};

use contentmax_cli::formats::parse_graph;

const BIN: &str = env!("CARGO_BIN_EXE_contentmax");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CONTENTMAX_THREADS")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(BIN)
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_file(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn ct_reports_copies_and_content() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(dir.path(), "p2.edges", "a b 2\nb c 3\n");
    let out = run(&["ct", "--graph", &graph, "--pattern", "path:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("copies: 1"));
    assert!(text.contains("ct: 6"));
    assert!(text.contains("weight: 5"));
    assert!(text.contains("dag: true"));

    let empty = write_file(dir.path(), "empty.edges", "# nothing here\n");
    let out = run(&["ct", "--graph", &empty, "--pattern", "star:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("copies: 0"));
    assert!(text.contains("ct: 0"));
    assert!(text.contains("weight: 0"));

    let star = write_file(dir.path(), "star.edges", "u c 1\nv c 1\nw c 1\n");
    let out = run(&["ct", "--graph", &star, "--pattern", "star:2"]);
    let text = stdout(&out);
    assert!(text.contains("copies: 3"));
    assert!(text.contains("ct: 3"));
}

#[test]
fn ct_with_a_pattern_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(dir.path(), "g.edges", "a b 2\nb c 3\n");
    let pattern = write_file(dir.path(), "p.edges", "x y 1\ny z 1\n");
    let out = run(&[
        "ct",
        "--graph",
        &graph,
        "--pattern",
        &format!("file:{pattern}"),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ct: 6"));
}

#[test]
fn optimize_merges_disjoint_edges() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(dir.path(), "pair.edges", "a b 1\nc d 1\n");
    let final_path = dir.path().join("final.edges");
    let out = run(&[
        "optimize",
        "--graph",
        &graph,
        "--pattern",
        "path:1",
        "--trace",
        "--out",
        final_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("steps: 1"));
    assert!(text.contains("ct before: 2"));
    assert!(text.contains("ct after: 2"));
    assert!(text.contains("merge c d (1) -> a b | 1 1 | 2 -> 2"));

    let final_graph = parse_graph(&std::fs::read_to_string(final_path).unwrap()).unwrap();
    assert_eq!(final_graph.edge_count(), 1);
    assert_eq!(final_graph.edges()[0].label, "2".parse().unwrap());
    assert_eq!(final_graph.vertex_count(), 4);
}

#[test]
fn optimize_is_identity_on_covered_input() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(dir.path(), "p2.edges", "a b 2\nb c 3\n");
    let final_path = dir.path().join("same.edges");
    let out = run(&[
        "optimize",
        "--graph",
        &graph,
        "--pattern",
        "path:2",
        "--out",
        final_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("steps: 0"));
    let final_graph = parse_graph(&std::fs::read_to_string(final_path).unwrap()).unwrap();
    let original = parse_graph(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert_eq!(final_graph, original);
}

#[test]
fn bound_outputs_and_argument_checks() {
    let out = run(&["bound", "--kind", "path-int", "--N", "7", "--k", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value: 12"));
    assert!(text.contains("tuple: 3 2 2"));
    assert!(text.contains("witness check: ok (ct = 12)"));

    let out = run(&["bound", "--kind", "path-real", "--N", "6", "--k", "3"]);
    assert!(stdout(&out).contains("value: 8"));

    let out = run(&[
        "bound",
        "--kind",
        "star-real",
        "--N",
        "1",
        "--a",
        "2",
        "--t",
        "2",
    ]);
    let text = stdout(&out);
    assert!(text.contains("supremum: 1/2"));
    assert!(text.contains("value at t: 1/4"));
    assert!(text.contains("attained: no"));

    let out = run(&[
        "bound", "--kind", "star-int", "--N", "4", "--a", "2", "--kv",
    ]);
    let text = stdout(&out);
    assert!(text.contains("kind=star-int"));
    assert!(text.contains("value=6"));

    // Integer kinds reject fractional weights; usage problems exit with 2.
    let out = run(&["bound", "--kind", "path-int", "--N", "7/2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["bound", "--kind", "path-int", "--N", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "bound",
        "--kind",
        "star-real",
        "--N",
        "1",
        "--a",
        "3",
        "--t",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_matches_closed_forms() {
    let out = run(&["search", "--edges", "4", "--pattern", "star:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("best: 6"));

    let out = run(&["search", "--edges", "1", "--pattern", "path:2"]);
    assert!(stdout(&out).contains("best: 0"));

    let dir = tempfile::tempdir().unwrap();
    let listing = dir.path().join("maximizers.edges");
    let out = run(&[
        "search",
        "--edges",
        "7",
        "--pattern",
        "path:3",
        "--max-vertices",
        "5",
        "--out",
        listing.to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert!(text.contains("best: 12"));
    assert!(text.contains("coverage-satisfying maximizers: 3"));
    // The listing holds each maximizer as a parseable edge-list block.
    let listing = std::fs::read_to_string(listing).unwrap();
    assert_eq!(listing.matches("# maximizer").count(), 3);
    let first_block: String = listing
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let g = parse_graph(&first_block).unwrap();
    assert_eq!(g.edge_count(), 3);
    assert_eq!(g.weight(), "7".parse().unwrap());

    let out = run(&[
        "search",
        "--edges",
        "3",
        "--pattern",
        "path:3",
        "--max-vertices",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matpow_reports_bound_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_file(dir.path(), "m.txt", "3\n0 2 0\n0 0 3\n0 0 0\n");
    let out = run(&["matpow", "--matrix", &matrix, "--k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|A|: 5"));
    assert!(text.contains("|A^2|: 6"));
    assert!(text.contains("nilpotent: true"));
    assert!(text.contains("bound (|A|/2)^2: 25/4"));
    assert!(text.contains("|A^2| <= bound: true"));

    let out = run(&["matpow", "--matrix", &matrix, "--k", "1"]);
    assert!(stdout(&out).contains("|A^1|: 5"));

    let cycle = write_file(dir.path(), "c.txt", "2\n0 1\n1 0\n");
    let out = run(&["matpow", "--matrix", &cycle, "--k", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("nilpotent: false"));
    assert!(text.contains("bound comparison skipped"));

    let ragged = write_file(dir.path(), "bad.txt", "2\n1 2 3\n0 0\n");
    let out = run(&["matpow", "--matrix", &ragged, "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_failures_name_the_line_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.edges", "a b 1\na b 2\n");
    let out = run(&["ct", "--graph", &bad, "--pattern", "path:2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"));
    assert!(err.contains("duplicate edge"));

    let out = run(&["ct", "--graph", "/nonexistent.edges", "--pattern", "path:2"]);
    assert_eq!(out.status.code(), Some(2));

    let graph = write_file(dir.path(), "ok.edges", "a b 1\n");
    let out = run(&["ct", "--graph", &graph, "--pattern", "ring:4"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flags are usage errors too (clap's own exit code).
    let out = run(&["ct", "--graf", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_with_small_ranges() {
    let out = run(&["verify", "--suite", "paths", "--max-n", "4", "--max-k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ok oracle N=4 k=2"));
    assert!(text.contains("suite paths:"));
    assert!(!text.contains("FAIL"));

    let out = run(&[
        "verify", "--suite", "matrix", "--trials", "25", "--seed", "7",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("suite matrix: 27/27 cases passed"));

    let out = run(&["verify", "--suite", "stars", "--max-n", "4", "--max-a", "2"]);
    assert!(out.status.success());
}

#[test]
fn thread_cap_is_honored_and_validated() {
    let args = ["search", "--edges", "6", "--pattern", "path:2"];
    let solo = run(&args);
    let fanned = run_env(&args, "CONTENTMAX_THREADS", "3");
    assert!(solo.status.success() && fanned.status.success());
    assert_eq!(stdout(&solo), stdout(&fanned));

    let bad = run_env(&args, "CONTENTMAX_THREADS", "zero");
    assert_eq!(bad.status.code(), Some(2));
    let bad = run_env(&args, "CONTENTMAX_THREADS", "0");
    assert_eq!(bad.status.code(), Some(2));
}
