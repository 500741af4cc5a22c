//! End-to-end runs of the binary against the files in `tests/data`.
//! Expected reports live in `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite.

use std::path::{Path, PathBuf};
use std::process::Command;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qtwilled"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (got_code, stdout) = run(args);
    assert_eq!(got_code, code, "exit code of {args:?}\n{stdout}");
    let text = format!("exit: {got_code}\n{stdout}");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(text, expected, "report of {args:?} drifted from {}", path.display());
}

#[test]
fn r_matrix_is_a_dmap() {
    golden("check_dmap_r", &["check", "dmap", "modified_sl2.json", "--op", "R"], 0);
}

#[test]
fn doubled_r_matrix_fails_with_witnesses() {
    golden("check_dmap_two_r", &["check", "dmap", "modified_sl2.json", "--op", "twoR"], 1);
}

#[test]
fn garbage_mu_names_first_equation() {
    golden("check_qtla_garbage_mu", &["check", "qtla", "garbage_mu.json"], 1);
    let (_, text) = run(&["check", "qtla", "garbage_mu.json"]);
    assert!(text.contains("equation 1 "));
    assert!(!text.contains("equation 2 "));
}

#[test]
fn whitehead_for_sl2() {
    golden(
        "cohomology_semidirect_sl2",
        &["cohomology", "semidirect_sl2_adjoint.json", "--op", "zero", "--type", "I", "--max-degree", "2"],
        0,
    );
}

#[test]
fn aff1_derivations() {
    golden(
        "cohomology_semidirect_aff1",
        &["cohomology", "semidirect_aff1_adjoint.json", "--op", "zero", "--type", "I", "--max-degree", "3"],
        0,
    );
}

#[test]
fn zero_is_an_mc_element_after_twisting() {
    golden(
        "mc_residual_twisted_r",
        &["mc-residual", "modified_sl2.json", "--op", "zero", "--type", "I", "--twisted-around", "R"],
        0,
    );
}

#[test]
fn deformation_map_of_matched_pair() {
    golden("check_ddmap_matched_zero", &["check", "ddmap", "matched_sl2.json", "--op", "zero_hg"], 0);
}

#[test]
fn invalid_inputs_exit_two() {
    for args in [
        &["check", "ddmap", "modified_sl2.json", "--op", "R"][..],
        &["check", "dmap", "modified_sl2.json", "--op", "missing"],
        &["check", "qtla", "no_such_file.json"],
        &["mc-residual", "modified_sl2.json", "--op", "zero", "--type", "I", "--twisted-around", "twoR"],
        &["cohomology", "modified_sl2.json", "--op", "twoR", "--type", "I"],
        &["catalog", "nonsense"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).0, 2, "{args:?}");
    }
}

#[test]
fn reports_are_byte_stable() {
    let args = ["check", "qtla", "garbage_mu.json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn catalog_round_trip_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let (code, printed) = run(&["catalog", "modified", "--lie", "sl2"]);
    assert_eq!(code, 0);
    std::fs::write(&first, &printed).unwrap();
    // twisting by zero re-emits the same structure in canonical form
    let (code, again) = run(&["twist", first.to_str().unwrap(), "--op", "zero", "--type", "I"]);
    assert_eq!(code, 0);
    assert_eq!(printed, again);
}

#[test]
fn twisted_output_is_quasi_twilled() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("twisted.json");
    let (code, _) = run(&["twist", "modified_sl2.json", "--op", "R", "--type", "I", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, report) = run(&["check", "qtla", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    // R is a map, so the twisted θ vanishes and zero is a D-map there
    let (code, _) = run(&["check", "dmap", out.to_str().unwrap(), "--op", "zero"]);
    assert_eq!(code, 0);
}

#[test]
fn type_two_twist_by_non_map_reports_xi() {
    let (code, text) = run(&["twist", "modified_sl2.json", "--op", "identity_hg", "--type", "II"]);
    let residual = run(&["check", "ddmap", "modified_sl2.json", "--op", "identity_hg"]).0;
    assert_eq!(code, residual);
    if code == 1 {
        assert!(text.contains("xi("));
    }
}

#[test]
fn selftest_passes() {
    let (code, text) = run(&["selftest"]);
    assert_eq!(code, 0, "{text}");
}
