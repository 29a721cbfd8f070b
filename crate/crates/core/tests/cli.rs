//! End-to-end runs of the `homprop` binary on the files in `tests/data`.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn report(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn homprop<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_homprop"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn check_passes_on_dual_numbers() {
    let run = homprop(&[
        "check",
        "--presentation",
        &path(&data("as.json")),
        "--algebra",
        &path(&data("dual.json")),
    ]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let r = run.report();
    assert_eq!(r["status"], "pass");
    assert_eq!(r["witnesses"], Value::Array(vec![]));
}

#[test]
fn check_fails_with_a_witness() {
    let run = homprop(&[
        "check",
        "--presentation",
        &path(&data("as.json")),
        "--algebra",
        &path(&data("dual_corrupted.json")),
    ]);
    assert_eq!(run.code, 1);
    let r = run.report();
    assert_eq!(r["status"], "fail");
    assert_eq!(r["witnesses"][0], 0);
    assert!(r["matrices"].as_object().is_some_and(|m| !m.is_empty()));
}

#[test]
fn builtin_export_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("as.json");
    let run = homprop(&["builtins", "--builtin", "as", "--out", &path(&out)]);
    assert_eq!(run.code, 0);
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        std::fs::read_to_string(data("as.json")).unwrap()
    );
}

#[test]
fn homify_bialgebra_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let hom = dir.path().join("hom_bialgebra.json");
    let run = homprop(&[
        "homify",
        "--builtin",
        "bialgebra",
        "--plan",
        "theta-min",
        "--out",
        &path(&hom),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let r = run.report();
    assert_eq!(r["presentation"]["relations"].as_array().unwrap().len(), 3);
    assert!(r["presentation"]["hom"].is_object());

    // the emitted file reads back, and a copy of it behaves identically
    let graph = homprop(&["graph-dump", "--presentation", &path(&hom)]);
    assert_eq!(graph.code, 0, "{}", graph.stdout);
    let normal = homprop(&["normality", "--presentation", &path(&hom)]);
    assert_eq!(normal.code, 0, "{}", normal.stdout);
    let text = std::fs::read_to_string(&hom).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, r["presentation"]);
    let again = dir.path().join("again.json");
    std::fs::write(&again, &text).unwrap();
    let reread = homprop(&["graph-dump", "--presentation", &path(&again)]);
    assert_eq!(reread.stdout, graph.stdout);
}

#[test]
fn hom_twist_of_the_flip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let twisted = dir.path().join("twisted.json");
    let args = [
        "hom-twist".to_string(),
        "--builtin".into(),
        "ybe".into(),
        "--algebra".into(),
        path(&data("flip.json")),
        "--beta".into(),
        path(&data("upper_triangular.json")),
        "--out".into(),
        path(&twisted),
    ];
    let run = homprop(&args);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let r = run.report();
    assert_eq!(r["status"], "pass");
    assert!(r["relations"]
        .as_array()
        .unwrap()
        .iter()
        .all(|rel| rel["status"] == "passed"));

    // the twisted algebra satisfies the hom-ified presentation on its own
    let hom = dir.path().join("hom_ybe.json");
    std::fs::write(&hom, serde_json::to_string_pretty(&r["presentation"]).unwrap()).unwrap();
    let check = homprop(&[
        "check",
        "--presentation",
        &path(&hom),
        "--algebra",
        &path(&twisted),
    ]);
    assert_eq!(check.code, 0, "{}", check.stdout);

    // same inputs, same bytes
    let first = std::fs::read_to_string(&twisted).unwrap();
    assert_eq!(homprop(&args).stdout, run.stdout);
    assert_eq!(std::fs::read_to_string(&twisted).unwrap(), first);
}

#[test]
fn derived_sequence_of_a_twisted_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let twisted = dir.path().join("twisted.json");
    let run = homprop(&[
        "hom-twist",
        "--builtin",
        "as",
        "--plan",
        "multiplicative",
        "--algebra",
        &path(&data("dual.json")),
        "--beta",
        &path(&data("dual_beta.json")),
        "--out",
        &path(&twisted),
    ]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let hom = dir.path().join("hom_as.json");
    std::fs::write(
        &hom,
        serde_json::to_string_pretty(&run.report()["presentation"]).unwrap(),
    )
    .unwrap();
    for n in ["1", "2", "3"] {
        let d = homprop(&[
            "derived",
            "--presentation",
            &path(&hom),
            "--algebra",
            &path(&twisted),
            "--n",
            n,
        ]);
        assert_eq!(d.code, 0, "n = {n}: {}", d.stdout);
    }
}

#[test]
fn non_morphism_is_a_failed_precondition() {
    let run = homprop(&[
        "hom-twist",
        "--builtin",
        "as",
        "--algebra",
        &path(&data("dual.json")),
        "--beta",
        &path(&data("dual_not_morphism.json")),
    ]);
    assert_eq!(run.code, 2);
    let r = run.report();
    assert_eq!(r["status"], "precondition_failed");
    assert_eq!(r["witnesses"][0]["generator"], "mu");
    assert!(run.stderr.contains("not a morphism"));
}

#[test]
fn input_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let run = homprop(&[
        "check",
        "--presentation",
        &path(&missing),
        "--algebra",
        &path(&data("dual.json")),
    ]);
    assert_eq!(run.code, 3);
    assert_eq!(run.report()["status"], "input_error");

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"space\": {\n").unwrap();
    let run = homprop(&[
        "check",
        "--presentation",
        &path(&data("as.json")),
        "--algebra",
        &path(&broken),
    ]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("broken.json"), "{}", run.stderr);

    // a map of the wrong shape
    let run = homprop(&["check", "--builtin", "as", "--algebra", &path(&data("flip.json"))]);
    assert_eq!(run.code, 3);
}
