//! End-to-end tests spawning the real binary on real files.

use std::path::Path;
use std::process::{Command, Output};

fn triaco(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triaco"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

/// Dual numbers: e1 unital, e2 square-zero, all products equal, identity maps.
const DUAL_NUMBERS: &str = r#"{
  "dim": 2,
  "left":   [[[1,0],[0,1]],[[0,1],[0,0]]],
  "right":  [[[1,0],[0,1]],[[0,1],[0,0]]],
  "middle": [[[1,0],[0,1]],[[0,1],[0,0]]],
  "alpha": [[1,0],[0,1]],
  "beta":  [[1,0],[0,1]]
}"#;

const ABELIAN_LINE: &str = r#"{
  "dim": 1,
  "left": [[[0]]], "right": [[[0]]], "middle": [[[0]]],
  "alpha": [[1]], "beta": [[1]]
}"#;

const TRIVIAL_LINE_MODULE: &str = r#"{
  "dim": 1,
  "lact_left": [[[0]]], "lact_right": [[[0]]], "lact_middle": [[[0]]],
  "ract_left": [[[0]]], "ract_right": [[[0]]], "ract_middle": [[[0]]],
  "alphaV": [[1]], "betaV": [[1]]
}"#;

#[test]
fn check_accepts_dual_numbers() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", DUAL_NUMBERS);
    let out = triaco(&["check", "algebra.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("ok"));
}

#[test]
fn check_rejects_corrupted_algebra() {
    let dir = tempfile::tempdir().unwrap();
    // middle product of e1 with itself gains a spurious e2 component
    let corrupted = DUAL_NUMBERS.replace(
        "\"middle\": [[[1,0],[0,1]],[[0,1],[0,0]]]",
        "\"middle\": [[[1,1],[0,1]],[[0,1],[0,0]]]",
    );
    write(dir.path(), "algebra.json", &corrupted);
    let out = triaco(&["check", "algebra.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("axiom("));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.json", "{ not json");
    let out = triaco(&["check", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("bad.json"), "stderr: {err}");

    let out = triaco(&["check", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tree_count_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    let out = triaco(&["trees", "--degree", "3", "--count"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "11");

    let out = triaco(&["trees", "--degree", "2", "--list"], dir.path());
    assert_eq!(stdout(&out), "((**)*)\n(*(**))\n(***)\n");

    let out = triaco(&["trees", "--degree", "1", "--labels"], dir.path());
    assert_eq!(stdout(&out), "(**)\tleft\tright\n");
}

#[test]
fn h2_of_abelian_line_is_3() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    write(dir.path(), "module.json", TRIVIAL_LINE_MODULE);
    let out = triaco(
        &["h2", "algebra.json", "--module", "module.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("dim\t3\n"), "{}", stdout(&out));

    // omitted module defaults to the trivial line
    let out2 = triaco(&["h2", "algebra.json"], dir.path());
    assert_eq!(stdout(&out), stdout(&out2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", DUAL_NUMBERS);
    let first = triaco(&["cocycles", "algebra.json", "--json"], dir.path());
    let second = triaco(&["cocycles", "algebra.json", "--json"], dir.path());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
}

#[test]
fn hochschild_table_for_the_abelian_line() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    let out = triaco(
        &["hochschild", "algebra.json", "--degree", "2", "--coeff", "trivial"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("degree\tdim_cochains\trank_delta\tdim_cohomology\n"));
    assert!(text.contains("\n2\t3\t0\t3\n"), "{text}");

    let out = triaco(
        &["hochschild", "algebra.json", "--degree", "2", "--coeff", "self"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hochschild_degree_guard() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    let out = triaco(
        &["hochschild", "algebra.json", "--degree", "5"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_triaco"))
        .args(["hochschild", "algebra.json", "--degree", "5"])
        .env("TRIACO_MAX_DEGREE", "5")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn extend_builds_a_checkable_algebra() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    write(
        dir.path(),
        "cocycle.json",
        r#"{"f_left": [[[1]]], "f_right": [[[1]]], "f_middle": [[[1]]]}"#,
    );
    let out = triaco(
        &[
            "extend",
            "algebra.json",
            "--cocycle",
            "cocycle.json",
            "-o",
            "total.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let check = triaco(&["check", "total.json"], dir.path());
    assert_eq!(check.status.code(), Some(0));
    let center = triaco(&["center", "total.json"], dir.path());
    assert!(stdout(&center).starts_with("dim\t1\n"));
}

#[test]
fn extend_flags_non_cocycles() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", DUAL_NUMBERS);
    // the coefficient-of-e1 functional is not a cocycle component pattern:
    // f(e1,e1)=1 alone violates the identities on the dual numbers
    write(
        dir.path(),
        "bad.json",
        r#"{"f_left": [[[1],[0]],[[0],[0]]],
            "f_right": [[[0],[0]],[[0],[0]]],
            "f_middle": [[[0],[0]],[[0],[0]]]}"#,
    );
    let out = triaco(
        &["extend", "algebra.json", "--cocycle", "bad.json", "-o", "t.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn equiv_ext_distinguishes_cohomology_classes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    write(
        dir.path(),
        "f.json",
        r#"{"f_left": [[[1]]], "f_right": [[[0]]], "f_middle": [[[0]]]}"#,
    );
    write(
        dir.path(),
        "g.json",
        r#"{"f_left": [[[0]]], "f_right": [[[1]]], "f_middle": [[[0]]]}"#,
    );
    let same = triaco(
        &[
            "equiv-ext",
            "algebra.json",
            "--cocycle",
            "f.json",
            "--cocycle2",
            "f.json",
        ],
        dir.path(),
    );
    assert_eq!(same.status.code(), Some(0));
    assert!(stdout(&same).starts_with("equivalent"));

    let different = triaco(
        &[
            "equiv-ext",
            "algebra.json",
            "--cocycle",
            "f.json",
            "--cocycle2",
            "g.json",
        ],
        dir.path(),
    );
    assert_eq!(different.status.code(), Some(1));
    assert!(stdout(&different).starts_with("not equivalent"));
}

#[test]
fn deformation_verify_and_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    // abelian base: any first-order term verifies
    write(
        dir.path(),
        "deformation.json",
        r#"{
  "order": 1,
  "base": "algebra.json",
  "terms": [
    {"left": [[[0]]], "right": [[[0]]], "middle": [[[0]]]},
    {"left": [[[1]]], "right": [[[2]]], "middle": [[[3]]]}
  ]
}"#,
    );
    let out = triaco(&["deform-verify", "deformation.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    write(
        dir.path(),
        "phi.json",
        r#"{"order": 1, "maps": [[[1]], [[5]]]}"#,
    );
    let out = triaco(
        &[
            "deform-equiv",
            "deformation.json",
            "deformation.json",
            "--phi",
            "phi.json",
        ],
        dir.path(),
    );
    // phi_t = 1 + 5t relates the deformation to itself at this
    // truncation: every cross term involves a base product, which is zero
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn pushforward_pullback_round_trip_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", DUAL_NUMBERS);
    write(dir.path(), "phi.json", r#"{"matrix": [[1,1],[0,1]]}"#);
    let out = triaco(
        &[
            "pushforward",
            "algebra.json",
            "--map",
            "phi.json",
            "-o",
            "pushed.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let check = triaco(&["check", "pushed.json"], dir.path());
    assert_eq!(check.status.code(), Some(0));
    let out = triaco(
        &[
            "pullback",
            "pushed.json",
            "--map",
            "phi.json",
            "-o",
            "back.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let original: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("algebra.json")).unwrap())
            .unwrap();
    let back: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("back.json")).unwrap())
            .unwrap();
    assert_eq!(original, back);

    write(dir.path(), "singular.json", r#"{"matrix": [[1,2],[2,4]]}"#);
    let out = triaco(
        &["pushforward", "algebra.json", "--map", "singular.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_family_and_companions() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", ABELIAN_LINE);
    let out = triaco(&["derive", "algebra.json", "--json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["parameters"].as_array().unwrap().len(), 3);

    write(dir.path(), "d.json", r#"{"matrix": [[0]]}"#);
    let out = triaco(
        &["derive-companions", "algebra.json", "--given-d", "d.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("homogeneous_dim\t2\n"), "{}", stdout(&out));
}

#[test]
fn check_module_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", DUAL_NUMBERS);
    // the square-zero generator acts on the line, which no valid module allows
    write(
        dir.path(),
        "module.json",
        r#"{
  "dim": 1,
  "lact_left": [[[0]],[[1]]], "lact_right": [[[0]],[[0]]], "lact_middle": [[[0]],[[0]]],
  "ract_left": [[[0],[0]]], "ract_right": [[[0],[0]]], "ract_middle": [[[0],[0]]],
  "alphaV": [[1]], "betaV": [[1]]
}"#,
    );
    let out = triaco(
        &["check-module", "algebra.json", "--module", "module.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("axiom("));
}

#[test]
fn wrong_shape_cocycle_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "algebra.json", DUAL_NUMBERS);
    // a 1x1x1 cocycle over a dim-2 algebra
    write(
        dir.path(),
        "small.json",
        r#"{"f_left": [[[1]]], "f_right": [[[0]]], "f_middle": [[[0]]]}"#,
    );
    let out = triaco(
        &["extend", "algebra.json", "--cocycle", "small.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = triaco(
        &[
            "equiv-ext",
            "algebra.json",
            "--cocycle",
            "small.json",
            "--cocycle2",
            "small.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}
