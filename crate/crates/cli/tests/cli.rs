use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn vg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vg")).args(args).env_remove("VG_SEED").output().expect("failed to run vg")
}

fn vg_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("failed to run vg");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = vg(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn catalog_output_pipes_into_chambers() {
    let cat = vg(&["catalog", "a3"]);
    assert!(cat.status.success());
    let o = vg_stdin(&["chambers", "-"], &cat.stdout);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("24 chambers"));
}

#[test]
fn six_planes_tope_graphs_differ() {
    let o = vg(&["compare", "generic6a", "generic6b", "--what", "topegraph"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("NOT isomorphic: degree profiles differ (two degree-6 vertices vs none)"));
    let o = vg(&["compare", "generic6a", "generic6b", "--what", "lattice"]);
    assert!(stdout(&o).starts_with("isomorphic"));
}

#[test]
fn falk_square_zero_counts() {
    assert_eq!(json(&["sqzero", "falk-a", "--field", "Q"])["lines"].as_array().unwrap().len(), 11);
    assert_eq!(json(&["sqzero", "falk-b"])["lines"].as_array().unwrap().len(), 10);
    let o = vg(&["compare", "falk-a", "falk-b", "--what", "graded-vg-invariants"]);
    assert!(stdout(&o).contains("graded VG algebras non-isomorphic"));
}

#[test]
fn json_reports_carry_a_schema_version() {
    for args in [
        vec!["chambers", "pencil3"],
        vec!["charpoly", "a3"],
        vec!["circuits", "a3"],
        vec!["gheav", "pencil3"],
        vec!["autgroups", "pencil3"],
        vec!["topegraph", "b2"],
    ] {
        let v = json(&args);
        assert_eq!(v["schema_version"], 1, "{args:?}");
        assert_eq!(v["command"], args[0], "{args:?}");
    }
}

#[test]
fn pencil_values() {
    assert_eq!(json(&["chambers", "pencil3"])["count"], 6);
    let aut = json(&["autgroups", "pencil3"]);
    assert_eq!(aut["graph"], "12");
    assert_eq!(aut["filtered"], "48");
    assert_eq!(json(&["gheav", "pencil3", "--structural"])["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn exit_codes() {
    assert_eq!(vg(&["chambers", "a3"]).status.code(), Some(0));
    assert_eq!(vg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(vg(&["chambers", "no-such-entry"]).status.code(), Some(1));
    assert_eq!(vg(&["--field", "Fp:4", "gheav", "b2"]).status.code(), Some(1));
    assert_eq!(vg(&["--field", "Fp:2", "gheav", "pencil3"]).status.code(), Some(1));
    assert_eq!(vg(&["topegraph", "pencil3", "--from-heav"]).status.code(), Some(2));
    assert_eq!(vg(&["verify", "no-such-module"]).status.code(), Some(1));
}

#[test]
fn recovering_the_pencil_tope_graph_is_refused() {
    let o = vg(&["topegraph", "pencil3", "--from-heav"]);
    assert!(stderr(&o).contains("not codim-2 generic; use the conjecture harness"));
}

#[test]
fn malformed_json_reports_its_position() {
    let o = vg_stdin(&["chambers", "-"], b"{\"ell\": 2,\n \"normals\": [[1, 0],, [0, 1]]}");
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn characteristic_two_needs_the_override() {
    let v = json(&["--field", "Fp:2", "--allow-char2", "gheav", "pencil3"]);
    assert_eq!(v["elements"].as_array().unwrap().len(), 14);
}

#[test]
fn dot_output_is_sorted_and_stable() {
    let a = vg(&["topegraph", "a3", "--format", "dot"]);
    let b = vg(&["topegraph", "a3", "--format", "dot"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("graph"));
}

#[test]
fn harness_reports_are_reproducible() {
    let args = ["--json", "--seed", "7", "reconstruct-filtered", "a3", "--mode", "random", "--trials", "200"];
    let a = vg(&args);
    let b = vg(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let mut jobs = vec!["--jobs", "3"];
    jobs.extend_from_slice(&args);
    assert_eq!(vg(&jobs).stdout, a.stdout);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let args = ["--json", "reconstruct-filtered", "a3", "--mode", "random", "--trials", "50"];
    let run =
        |seed: &str| Command::new(env!("CARGO_BIN_EXE_vg")).args(args).env("VG_SEED", seed).output().unwrap().stdout;
    let explicit = vg(&["--json", "--seed", "11", "reconstruct-filtered", "a3", "--mode", "random", "--trials", "50"]);
    assert_eq!(run("11"), explicit.stdout);
    assert_ne!(run("12"), explicit.stdout);
}

#[test]
fn graded_harness_on_a_generic_entry() {
    let v = json(&["reconstruct-graded", "generic6b"]);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(v["matching"], 64);
}

#[test]
fn sign_rescaled_recovery() {
    let o = vg(&["recover-circuits", "generic6a", "--scalars", "1,-1,1,1,-1,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("equal to the arrangement's after reorienting"));
}

#[test]
fn catalog_self_check() {
    let o = vg(&["catalog", "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = vg(&["catalog"]);
    for name in ["a3", "pencil3", "generic6a", "generic6b", "falk-a", "falk-b"] {
        assert!(stdout(&o).contains(name));
    }
}

#[test]
fn verify_a_single_module() {
    let o = vg(&["verify", "exactla", "--random-count", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS 7 "), "{out}");
    assert!(!out.contains("PASS 1 "), "{out}");
}
