use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use liking_core::fixtures::FIGURE1_DG;
use liking_core::io::{read_digraph, write_digraph};
use liking_core::search::read_catalog;
use liking_core::Digraph;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("liking").chain(args.iter().copied());
    let code = liking_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn complete_file(dir: &TempDir, n: usize) -> PathBuf {
    put(
        dir,
        &format!("k{n}.dg"),
        &write_digraph(&Digraph::complete(n).unwrap()),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_figure1_holds() {
    let dir = TempDir::new().unwrap();
    let fig = put(&dir, "fig1.dg", FIGURE1_DG);
    let (code, out, _) = run(&["check", s(&fig), "-t", "2", "-l", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(2,2)-liking: yes"));
}

#[test]
fn check_complete_with_wrong_lambda_prints_witness() {
    let dir = TempDir::new().unwrap();
    let k4 = complete_file(&dir, 4);
    let (code, out, _) = run(&["check", s(&k4), "-t", "2", "-l", "1"]);
    assert_eq!(code, 1);
    assert!(
        out.contains("witness: S = {1,2} has 2 common out-neighbors, expected 1"),
        "{out}"
    );
}

#[test]
fn check_malformed_is_input_error() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "malformed.dg", "3\n010\n1x1\n000\n");
    let (code, _, err) = run(&["check", s(&bad), "-t", "2", "-l", "2"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "), "{err}");

    let missing = dir.path().join("nope.dg");
    assert_eq!(run(&["check", s(&missing), "-t", "2", "-l", "2"]).0, 2);
    // t larger than the order is a parameter error, not a failed property.
    let k3 = complete_file(&dir, 3);
    assert_eq!(run(&["check", s(&k3), "-t", "5", "-l", "1"]).0, 2);
}

#[test]
fn check_profile_and_validate() {
    let dir = TempDir::new().unwrap();
    let fig = put(&dir, "fig1.dg", FIGURE1_DG);
    let (code, out, _) = run(&[
        "check",
        s(&fig),
        "-t",
        "2",
        "-l",
        "2",
        "--profile",
        "--validate",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("profile over 21 2-subsets:"));
    assert!(out.contains("|CN+(S)| = 2: 21"));
    assert!(out.contains("counting identity: pass (42 = 42)"), "{out}");
    assert!(!out.contains("FAIL"));

    let k4 = complete_file(&dir, 4);
    let (code, out, _) = run(&[
        "check",
        s(&k4),
        "-t",
        "2",
        "-l",
        "1",
        "--profile",
        "--validate",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("|CN+(S)| = 2: 6"));
    assert!(out.contains("validators skipped"));
}

#[test]
fn search_theorem1_range() {
    let dir = TempDir::new().unwrap();
    let (code, out, _) = run(&[
        "search",
        "-t",
        "3",
        "-l",
        "1",
        "-n",
        "4..6",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(code, 0, "{out}");
    let counts: Vec<&str> = out
        .lines()
        .filter_map(|l| {
            l.split_once(": ")
                .map(|(_, r)| r.split(' ').next().unwrap())
        })
        .collect();
    assert_eq!(&counts[..3], ["1", "0", "0"]);
    assert!(out.contains("consistent with Theorem 1"));
    for n in 4..=6 {
        let text = fs::read_to_string(dir.path().join(format!("liking-t3-l1-n{n}.cat"))).unwrap();
        let cat = read_catalog(&text).unwrap();
        assert_eq!((cat.t, cat.lambda, cat.n, cat.complete), (3, 1, n, true));
        assert_eq!(cat.keys.len(), usize::from(n == 4));
    }
}

#[test]
fn search_single_order() {
    let dir = TempDir::new().unwrap();
    let (code, out, _) = run(&[
        "search",
        "-t",
        "2",
        "-l",
        "2",
        "-n",
        "4",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n=4: 1 classes"), "{out}");
    assert!(!out.contains("Theorem 1"));
}

#[test]
fn search_finds_nondiregular_at_seven() {
    let dir = TempDir::new().unwrap();
    let (code, out, _) = run(&[
        "search",
        "-t",
        "2",
        "-l",
        "2",
        "-n",
        "7",
        "--workers",
        "2",
        "--find-nondiregular",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(code, 0);
    let line = out
        .lines()
        .find(|l| l.contains("non-diregular classes:"))
        .unwrap();
    let count: usize = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(count >= 1, "{out}");
}

#[test]
fn search_budget_and_strict() {
    let dir = TempDir::new().unwrap();
    let base = [
        "search",
        "-t",
        "2",
        "-l",
        "2",
        "-n",
        "7",
        "--budget",
        "100",
        "--out",
        s(dir.path()),
    ];
    let (code, out, _) = run(&base);
    assert_eq!(code, 0);
    assert!(out.contains("budget exhausted"));
    let text = fs::read_to_string(dir.path().join("liking-t2-l2-n7.cat")).unwrap();
    assert!(!read_catalog(&text).unwrap().complete);

    let mut strict = base.to_vec();
    strict.push("--strict");
    assert_eq!(run(&strict).0, 1);
}

#[test]
fn search_rejects_bad_ranges() {
    assert_eq!(run(&["search", "-t", "2", "-l", "2", "-n", "6..4"]).0, 2);
    assert_eq!(run(&["search", "-t", "2", "-l", "2", "-n", "x"]).0, 2);
    assert_eq!(run(&["search", "-t", "2", "-l", "2", "-n", "17"]).0, 2);
    assert_eq!(run(&["search", "-t", "2", "-l", "0", "-n", "4"]).0, 2);
}

#[test]
fn extract_design_examples() {
    let dir = TempDir::new().unwrap();
    let k4 = complete_file(&dir, 4);
    let (code, out, _) = run(&["extract-design", s(&k4), "-t", "2", "-l", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(
        out.contains("2-(4,3,2) design: v=4 k=3 lambda=2 b=4 r=3 symmetric=yes"),
        "{out}"
    );
    let written = fs::read_to_string(dir.path().join("k4.design")).unwrap();
    assert!(written.starts_with("2 4 3 2\n"));
    assert_eq!(written.lines().count(), 5);

    let fig = put(&dir, "fig1.dg", FIGURE1_DG);
    let (code, out, _) = run(&["extract-design", s(&fig), "-t", "2", "-l", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("not diregular at vertex 1"), "{out}");
    assert!(!dir.path().join("fig1.design").exists());

    let k6 = complete_file(&dir, 6);
    let target = dir.path().join("k6-out.txt");
    let (code, out, _) = run(&[
        "extract-design",
        s(&k6),
        "-t",
        "3",
        "-l",
        "3",
        "-o",
        s(&target),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("3-(6,5,3) design"));
    assert!(out.contains("symmetric=yes"));
    assert!(
        out.contains("Hughes bound k >= v-1: holds (tight)"),
        "{out}"
    );
    assert!(target.exists());
}

#[test]
fn extract_design_rejects_non_liking() {
    let dir = TempDir::new().unwrap();
    let k4 = complete_file(&dir, 4);
    let (code, out, _) = run(&["extract-design", s(&k4), "-t", "2", "-l", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("not (2,1)-liking"));
}

#[test]
fn convert_examples() {
    let dir = TempDir::new().unwrap();
    let k5 = put(
        &dir,
        "k5.graph",
        &write_digraph(&Digraph::complete(5).unwrap()),
    );
    let (code, out, _) = run(&["convert", s(&k5)]);
    assert_eq!(code, 0);
    let d = read_digraph(&out).unwrap();
    assert!(d.is_complete() && d.order() == 5);

    let p3 = put(&dir, "p3.graph", "3\n010\n101\n010\n");
    let target = dir.path().join("p3.dg");
    let (code, out, _) = run(&["convert", s(&p3), "-o", s(&target)]);
    assert_eq!(code, 0);
    assert!(out.contains("arcs=4"));
    assert_eq!(
        read_digraph(&fs::read_to_string(&target).unwrap())
            .unwrap()
            .arc_count(),
        4
    );

    let asym = put(&dir, "asym.graph", "3\n010\n001\n000\n");
    let (code, _, err) = run(&["convert", s(&asym)]);
    assert_eq!(code, 2);
    assert!(err.contains("symmetric"), "{err}");
}

#[test]
fn iso_compares_keys() {
    let dir = TempDir::new().unwrap();
    let fig = read_digraph(FIGURE1_DG).unwrap();
    let a = put(&dir, "a.dg", FIGURE1_DG);
    let b = put(
        &dir,
        "b.dg",
        &write_digraph(&fig.permuted(&[3, 6, 0, 5, 1, 4, 2])),
    );
    let c = put(&dir, "c.dg", &write_digraph(&fig.reverse()));
    let (code, out, _) = run(&["iso", s(&a), s(&b)]);
    assert_eq!(code, 0);
    assert!(out.contains("isomorphic: yes"));
    assert_eq!(run(&["iso", s(&a), s(&c)]).0, 1);
}

#[test]
fn verify_paper_skip_search() {
    let (code, out, _) = run(&["verify-paper", "--skip-search"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("P3 SKIP"));
    assert!(out.contains("P4 SKIP"));
    for id in ["P1", "P2", "P5", "P6", "P7"] {
        assert!(out.contains(&format!("{id} PASS")), "{id}: {out}");
    }
}

#[test]
fn verify_paper_corrupted_fixture_fails() {
    let (code, out, _) = run(&["verify-paper", "--skip-search", "--corrupt-fixture"]);
    assert_eq!(code, 1);
    assert!(out.contains("P1 FAIL"));
    assert!(out.contains("SOME CLAIMS FAILED"));
}

fn strip_runtimes(v: &mut serde_json::Value) {
    for c in v["claims"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("runtime_ms");
    }
}

#[test]
fn verify_paper_full_run_is_reproducible() {
    let (code, first, _) = run(&["verify-paper", "--json", "--workers", "2"]);
    assert_eq!(code, 0, "{first}");
    let (code, second, _) = run(&["verify-paper", "--json"]);
    assert_eq!(code, 0);
    let mut a: serde_json::Value = serde_json::from_str(&first).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(&second).unwrap();
    let ids: Vec<&str> = a["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["P1", "P2", "P3", "P4", "P5", "P6", "P7"]);
    assert!(a["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
    strip_runtimes(&mut a);
    strip_runtimes(&mut b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let fig = put(&dir, "fig1.dg", FIGURE1_DG);
    let bin = env!("CARGO_BIN_EXE_liking");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", s(&fig), "-t", "2", "-l", "2"]), Some(0));
    assert_eq!(status(&["check", s(&fig), "-t", "2", "-l", "1"]), Some(1));
    assert_eq!(status(&["check", s(&fig)]), Some(2));
    assert_eq!(status(&["frobnicate"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}
