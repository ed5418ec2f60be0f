use std::path::{Path, PathBuf};

use surfcob_cli::cli;
use surfcob_cli::suites::ANCHORS;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("surfcob").chain(args.iter().copied());
    let code = cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_curve(dir: &Path, name: &str, spec: &str, genus: usize) -> PathBuf {
    let (code, out, err) = run(&["curve", spec, "--genus", &genus.to_string()]);
    assert_eq!(code, 0, "{err}");
    let p = dir.join(name);
    std::fs::write(&p, out).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn passing_suite_exits_zero() {
    let (code, out, _) = run(&["suite", "classes", "--genus", "2", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().any(|l| l.starts_with("PASS word-problem")));
    assert!(!out.contains("FAIL"));
}

#[test]
fn suite_reports_are_reproducible() {
    let (_, a, _) = run(&["--json", "suite", "mcg", "--seed", "3"]);
    let (_, b, _) = run(&["--json", "suite", "mcg", "--seed", "3"]);
    let a: surfcob_cli::SuiteReport = serde_json::from_str(&a).unwrap();
    let b: surfcob_cli::SuiteReport = serde_json::from_str(&b).unwrap();
    assert!(a.same_results(&b));
    assert_eq!(a.suite, "mcg");
    assert_eq!(a.seed, 3);
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let (code, out, _) = run(&["suite", "holonomy", "--tolerance", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL hol-section"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["suite", "no-such-suite"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["invariants", "/nonexistent/curve.json"]).0, 2);
    assert_eq!(run(&["curve", "alpha:9"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn kinked_curve_is_obstructed_but_the_command_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let k = write_curve(dir.path(), "k.json", "kinked:a1", 2);
    let (code, out, _) = run(&["--json", "unobstructed", s(&k)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["unobstructed"], false);
    let a = write_curve(dir.path(), "a.json", "alpha:1", 2);
    let (code, out, _) = run(&["unobstructed", s(&a)]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "unobstructed: true");
}

#[test]
fn surgery_needs_a_degree_one_point() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_curve(dir.path(), "a.json", "alpha:1", 2);
    let b = write_curve(dir.path(), "b.json", "beta:1", 2);
    let (_, out, _) = run(&["--json", "minpos", s(&a), s(&b)]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["intersections"], 1);
    let (ab, _, _) = run(&["surgery", s(&a), s(&b), "--point", "0"]);
    let (ba, _, e) = run(&["surgery", s(&b), s(&a), "--point", "0"]);
    // exactly one order has degree one at the single point
    assert_eq!([ab, ba].iter().filter(|&&c| c == 0).count(), 1, "{e}");
    assert!([ab, ba].contains(&2));
    assert_eq!(run(&["surgery", s(&a), s(&b), "--point", "5"]).0, 2);
}

#[test]
fn invariants_and_floer_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_curve(dir.path(), "a.json", "alpha:1", 2);
    let b = write_curve(dir.path(), "b.json", "beta:1", 2);
    let (code, out, _) = run(&["--json", "invariants", s(&a)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let c: surfcob::CurveDiagram = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let k = surfcob::invariants::class_of(&c).unwrap();
    assert_eq!(v["modulus"], 2);
    assert_eq!(v["turning"], surfcob::invariants::turning_number(&c).unwrap());
    assert_eq!(v["h"], serde_json::to_value(&k.h).unwrap());
    let (code, out, _) = run(&["--json", "floer", s(&a), s(&b)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["rank_at_one"], 1);
}

#[test]
fn rendering_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for (i, spec) in ["alpha:1", "beta:1", "alpha:2", "beta:2", "gamma:1"].iter().enumerate() {
        paths.push(write_curve(dir.path(), &format!("c{i}.json"), spec, 2));
    }
    let mut args: Vec<String> = vec!["render".into()];
    args.extend(paths.iter().map(|p| s(p).to_string()));
    let mut svgs = Vec::new();
    for name in ["one.svg", "two.svg"] {
        let o = dir.path().join(name);
        let mut a = args.clone();
        a.extend(["-o".to_string(), s(&o).to_string()]);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(run(&refs).0, 0);
        svgs.push(std::fs::read_to_string(o).unwrap());
    }
    assert_eq!(svgs[0], svgs[1]);
    assert_eq!(svgs[0].matches("<g id=\"curve").count(), 5);
    assert!(svgs[0].starts_with("<?xml"));
}

#[test]
fn empty_render_draws_the_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("empty.svg");
    assert_eq!(run(&["render", "-o", s(&o), "--genus", "3"]).0, 0);
    let svg = std::fs::read_to_string(o).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg.matches("<g id=\"curve").count(), 0);
    // one label per side of the 12-gon
    assert_eq!(svg.matches("<text").count(), 12);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_surfcob");
    let ok = std::process::Command::new(bin).args(["curve", "torus"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = std::process::Command::new(bin).args(["suite"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn readme_lists_every_check() {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    for (id, statement) in ANCHORS {
        assert!(readme.contains(id), "{id}");
        assert!(readme.contains(statement), "{statement}");
    }
}
